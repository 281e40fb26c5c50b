#pragma once

#include <string>

#include "tsrnn/network.hpp"

namespace tsrnn {

// Single-file checkpoint: JSON header (spec, seed, epoch, tensor directory)
// followed by the raw little-endian double payload of every tensor, in
// directory order. Round-trips bit-exactly.
struct Checkpoint {
    NetworkSpec spec;
    unsigned seed = 0;
    int epoch = 0;
    NetworkParams params;
};

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace tsrnn
