#include "tsrnn/skeleton.hpp"

#include <algorithm>
#include <functional>

namespace tsrnn {

const char* part_name(BodyPart p) {
    switch (p) {
        case BodyPart::LeftArm: return "left-arm";
        case BodyPart::RightArm: return "right-arm";
        case BodyPart::Trunk: return "trunk";
        case BodyPart::LeftLeg: return "left-leg";
        case BodyPart::RightLeg: return "right-leg";
    }
    return "?";
}

bool SkeletonGraph::adjacent(int a, int b) const {
    for (const auto& [u, v] : edges)
        if ((u == a && v == b) || (u == b && v == a)) return true;
    return false;
}

std::vector<std::vector<int>> SkeletonGraph::adjacency() const {
    std::vector<std::vector<int>> adj(joint_count);
    for (const auto& [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    return adj;
}

std::vector<int> SkeletonGraph::joint_part() const {
    std::vector<int> owner(joint_count, -1);
    for (int p = 0; p < kPartCount; ++p) {
        for (int j : parts[p]) {
            if (j < 0 || j >= joint_count)
                throw ConfigError("part joint index out of range: " + std::to_string(j));
            if (owner[j] != -1)
                throw ConfigError("joint " + std::to_string(j) + " assigned to two parts");
            owner[j] = p;
        }
    }
    for (int j = 0; j < joint_count; ++j)
        if (owner[j] == -1)
            throw ConfigError("joint " + std::to_string(j) + " not assigned to any part");
    return owner;
}

void SkeletonGraph::validate() const {
    if (joint_count < 1) throw ConfigError("graph must have at least one joint");
    if (!joint_names.empty() && static_cast<int>(joint_names.size()) != joint_count)
        throw ConfigError("joint_names size does not match joint_count");
    if (static_cast<int>(edges.size()) != joint_count - 1)
        throw ConfigError("graph must be a tree: expected " + std::to_string(joint_count - 1) +
                          " edges, got " + std::to_string(edges.size()));
    for (const auto& [u, v] : edges)
        if (u < 0 || u >= joint_count || v < 0 || v >= joint_count || u == v)
            throw ConfigError("invalid edge (" + std::to_string(u) + "," + std::to_string(v) + ")");

    // Tree check: joint_count-1 edges and connected implies no cycles.
    auto adj = adjacency();
    std::vector<bool> seen(joint_count, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = true;
                ++reached;
                stack.push_back(v);
            }
    }
    if (reached != joint_count) throw ConfigError("graph is not connected");

    auto owner = joint_part();
    if (root_joint < 0 || root_joint >= joint_count)
        throw ConfigError("root_joint out of range");
    if (owner[root_joint] != static_cast<int>(BodyPart::Trunk))
        throw ConfigError("root_joint must belong to the trunk part");
    for (int c : center_joints)
        if (c < 0 || c >= joint_count)
            throw ConfigError("center joint out of range: " + std::to_string(c));
}

void SkeletonSequence::validate() const {
    if (valid_length < 1) throw DataError("sequence valid_length must be >= 1");
    if (valid_length > total_length()) throw DataError("valid_length exceeds frame count");
    if (dims != 3 && dims != 6) throw DataError("dims must be 3 or 6");
    if (frames.cols() != static_cast<Eigen::Index>(joint_count) * dims)
        throw DataError("frame width does not match joint_count*dims");
    if (!frames.allFinite()) throw DataError("sequence contains non-finite coordinates");
    for (int t = valid_length; t < total_length(); ++t)
        if (frames.row(t).cwiseAbs().maxCoeff() != 0.0)
            throw DataError("padding frames must be exactly zero");
}

void Dataset::validate() const {
    graph.validate();
    if (class_count < 1) throw DataError("class_count must be positive");
    for (size_t i = 0; i < sequences.size(); ++i) {
        const auto& s = sequences[i];
        s.validate();
        if (s.joint_count != graph.joint_count)
            throw DataError("sequence " + std::to_string(i) + " joint_count mismatch");
        if (s.label < 0 || s.label >= class_count)
            throw DataError("sequence " + std::to_string(i) + " label out of range");
    }
}

}  // namespace tsrnn
