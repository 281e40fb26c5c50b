#include "tsrnn/checkpoint.hpp"

#include <cstdint>
#include <fstream>

#include "tsrnn/json_io.hpp"

namespace tsrnn {

using nlohmann::json;

namespace {

constexpr char kMagic[8] = {'T', 'S', 'R', 'N', 'N', 'C', 'K', '1'};

}  // namespace

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
    json dir = json::array();
    NetworkParams& params = const_cast<NetworkParams&>(ckpt.params);
    visit_tensors(params, [&dir](const std::string& name, double*, std::size_t n) {
        dir.push_back({{"name", name}, {"size", n}});
    });
    json header = {{"spec", ckpt.spec}, {"seed", ckpt.seed}, {"epoch", ckpt.epoch},
                   {"tensors", dir}};
    const std::string header_str = header.dump();

    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write checkpoint: " + path);
    out.write(kMagic, sizeof(kMagic));
    const std::uint64_t hlen = header_str.size();
    out.write(reinterpret_cast<const char*>(&hlen), sizeof(hlen));
    out.write(header_str.data(), static_cast<std::streamsize>(hlen));
    visit_tensors(params, [&out](const std::string&, double* data, std::size_t n) {
        out.write(reinterpret_cast<const char*>(data),
                  static_cast<std::streamsize>(n * sizeof(double)));
    });
    if (!out) throw DataError("write failure on checkpoint: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open checkpoint: " + path);
    char magic[sizeof(kMagic)];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw DataError("not a checkpoint file: " + path);
    std::uint64_t hlen = 0;
    in.read(reinterpret_cast<char*>(&hlen), sizeof(hlen));
    std::string header_str(hlen, '\0');
    in.read(header_str.data(), static_cast<std::streamsize>(hlen));
    if (!in) throw DataError("truncated checkpoint header: " + path);

    json header;
    try {
        header = json::parse(header_str);
    } catch (const json::exception& e) {
        throw DataError(std::string("corrupt checkpoint header: ") + e.what());
    }

    Checkpoint ckpt;
    ckpt.spec = header.at("spec").get<NetworkSpec>();
    ckpt.seed = header.at("seed").get<unsigned>();
    ckpt.epoch = header.at("epoch").get<int>();
    ckpt.params = init_params(ckpt.spec, 0);

    const auto& dir = header.at("tensors");
    std::size_t idx = 0;
    visit_tensors(ckpt.params, [&](const std::string& name, double* data, std::size_t n) {
        if (idx >= dir.size() || dir.at(idx).at("name") != name ||
            dir.at(idx).at("size").get<std::size_t>() != n)
            throw DataError("checkpoint tensor directory mismatch at \"" + name + "\"");
        in.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(n * sizeof(double)));
        ++idx;
    });
    if (!in) throw DataError("truncated checkpoint payload: " + path);
    return ckpt;
}

}  // namespace tsrnn
