#include "tsrnn/serialize.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace tsrnn {

OrderKind parse_order_kind(const std::string& name) {
    if (name == "chain") return OrderKind::Chain;
    if (name == "traversal") return OrderKind::Traversal;
    throw ConfigError("unknown joint order kind: " + name);
}

namespace {

// Linearize one part: its joints must form a path in the induced subgraph.
std::vector<int> part_chain(const SkeletonGraph& graph, int part) {
    const auto& joints = graph.parts[part];
    if (joints.empty()) return {};
    if (joints.size() == 1) return joints;

    std::vector<bool> in_part(graph.joint_count, false);
    for (int j : joints) in_part[j] = true;

    std::map<int, std::vector<int>> adj;
    for (int j : joints) adj[j] = {};
    for (const auto& [u, v] : graph.edges)
        if (in_part[u] && in_part[v]) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }

    const std::string name = part_name(static_cast<BodyPart>(part));
    std::vector<int> ends;
    for (int j : joints) {
        if (adj[j].size() > 2)
            throw DataError("part \"" + name + "\" is not a path: joint " + std::to_string(j) +
                            " has " + std::to_string(adj[j].size()) + " in-part neighbors");
        if (adj[j].size() <= 1) ends.push_back(j);
    }
    if (ends.size() != 2)
        throw DataError("part \"" + name + "\" is not a path");

    std::vector<int> chain{std::min(ends[0], ends[1])};
    int prev = -1;
    while (static_cast<int>(chain.size()) < static_cast<int>(joints.size())) {
        int cur = chain.back(), next = -1;
        for (int nb : adj[cur])
            if (nb != prev) next = nb;
        if (next == -1) throw DataError("part \"" + name + "\" is not a connected path");
        prev = cur;
        chain.push_back(next);
    }
    return chain;
}

// Neighbor order controls the Euler tour: part priority first, then index.
std::vector<std::vector<int>> adjacency_sorted_by_part(const SkeletonGraph& graph) {
    auto adj = graph.adjacency();
    auto owner = graph.joint_part();
    for (auto& nb : adj)
        std::sort(nb.begin(), nb.end(), [&](int a, int b) {
            if (owner[a] != owner[b]) return owner[a] < owner[b];
            return a < b;
        });
    return adj;
}

}  // namespace

JointOrder chain_order(const SkeletonGraph& graph) {
    graph.validate();
    JointOrder out;
    out.kind = OrderKind::Chain;
    for (int p = 0; p < kPartCount; ++p) {
        auto chain = part_chain(graph, p);
        out.order.insert(out.order.end(), chain.begin(), chain.end());
    }
    return out;
}

JointOrder traversal_order(const SkeletonGraph& graph) {
    graph.validate();
    auto adj = adjacency_sorted_by_part(graph);

    JointOrder out;
    out.kind = OrderKind::Traversal;
    out.order.reserve(2 * graph.joint_count - 1);

    // Iterative DFS emitting a joint on every arrival, including backtracks.
    struct Frame {
        int joint;
        size_t next_child = 0;
    };
    std::vector<bool> visited(graph.joint_count, false);
    std::vector<Frame> stack{{graph.root_joint}};
    visited[graph.root_joint] = true;
    out.order.push_back(graph.root_joint);
    while (!stack.empty()) {
        Frame& top = stack.back();
        bool descended = false;
        while (top.next_child < adj[top.joint].size()) {
            int child = adj[top.joint][top.next_child++];
            if (!visited[child]) {
                visited[child] = true;
                out.order.push_back(child);
                stack.push_back({child});
                descended = true;
                break;
            }
        }
        if (!descended) {
            stack.pop_back();
            if (!stack.empty()) out.order.push_back(stack.back().joint);
        }
    }
    return out;
}

SpatialInput build_spatial_input(const SkeletonSequence& seq, const JointOrder& order, int tau,
                                 int center_frame) {
    if (tau < 1) throw InvalidInputError("window size must be >= 1");
    if (center_frame < 0 || center_frame >= seq.total_length())
        throw InvalidInputError("center frame out of range");

    SpatialInput out;
    out.center_frame = center_frame;
    out.window = tau;
    out.steps = Mat::Zero(order.length(), static_cast<Eigen::Index>(tau) * seq.dims);
    const int start = center_frame - tau / 2;
    for (int s = 0; s < order.length(); ++s) {
        const int j = order.order[s];
        for (int w = 0; w < tau; ++w) {
            const int t = start + w;
            if (t < 0 || t >= seq.valid_length) continue;
            out.steps.block(s, static_cast<Eigen::Index>(w) * seq.dims, 1, seq.dims) =
                seq.frames.block(t, seq.col(j), 1, seq.dims);
        }
    }
    return out;
}

std::vector<int> spatial_centers(int T, int tau, CenterMode mode, unsigned rng_seed) {
    if (tau < 1 || tau > T) throw InvalidInputError("window size must be in [1, T]");
    if (mode == CenterMode::TrainRandom) {
        std::mt19937 rng(rng_seed);
        std::uniform_int_distribution<int> dist(0, T - 1);
        return {dist(rng)};
    }
    std::vector<int> centers;
    for (int c = tau / 2; c < T; c += tau) centers.push_back(c);
    return centers;
}

}  // namespace tsrnn
