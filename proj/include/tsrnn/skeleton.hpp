#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "tsrnn/types.hpp"

namespace tsrnn {

// The five body parts, in the serialization order used throughout.
enum class BodyPart { LeftArm = 0, RightArm = 1, Trunk = 2, LeftLeg = 3, RightLeg = 4 };

inline constexpr int kPartCount = 5;

const char* part_name(BodyPart p);

// Undirected tree over the joints plus the five-part partition.
struct SkeletonGraph {
    int joint_count = 0;
    std::vector<std::string> joint_names;
    std::vector<std::pair<int, int>> edges;
    std::array<std::vector<int>, kPartCount> parts;
    int root_joint = 0;
    std::vector<int> center_joints;

    bool adjacent(int a, int b) const;
    std::vector<std::vector<int>> adjacency() const;
    // Part index of each joint; throws if the partition is not total/disjoint.
    std::vector<int> joint_part() const;
    // Throws ConfigError if any invariant fails (tree, partition, root in trunk).
    void validate() const;
};

// Per-frame per-joint coordinates. frames is [T_raw x joint_count*dims],
// row t = (j0_x, j0_y, j0_z, j1_x, ...). dims is 3, or 6 for a two-person pair.
struct SkeletonSequence {
    Mat frames;
    int joint_count = 0;
    int dims = 3;
    int valid_length = 0;
    int label = 0;
    int subject_id = 0;
    int view_id = 0;

    int total_length() const { return static_cast<int>(frames.rows()); }
    // Coordinate column base of joint j.
    int col(int j) const { return j * dims; }
    void validate() const;
};

struct Dataset {
    SkeletonGraph graph;
    std::vector<SkeletonSequence> sequences;
    int class_count = 0;
    std::vector<std::string> class_names;

    void validate() const;
};

}  // namespace tsrnn
