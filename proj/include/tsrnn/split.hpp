#pragma once

#include <vector>

#include "tsrnn/skeleton.hpp"

namespace tsrnn {

enum class SplitMode { BySequence, BySubject, ByView };

SplitMode parse_split_mode(const std::string& name);

struct FoldSplit {
    std::vector<int> train;
    std::vector<int> test;
};

// Deterministic k-fold partitions. Group modes never place a subject/view id
// in both sides of a fold.
std::vector<FoldSplit> split_folds(const Dataset& ds, int k, SplitMode mode, unsigned seed);

}  // namespace tsrnn
