#pragma once

#include <string>

#include "tsrnn/skeleton.hpp"

namespace tsrnn {

// Desk-scale stand-in for the benchmark datasets. Classes are separable by
// construction: each class holds one body part in a raised posture and
// oscillates it with a class-specific frequency and axis on top of a shared
// rest pose. Views are global rotations
// about the y axis, subjects scale the skeleton, so cross-view and
// cross-subject splits are meaningful.
struct SyntheticSpec {
    int class_count = 4;
    int joint_count = 20;
    int samples_per_class = 50;
    int min_length = 30;
    int max_length = 60;
    double noise_level = 0.01;
    int subject_count = 4;
    int view_count = 1;
    double view_rotation_deg = 0.0;  // view v is rotated by v*this about y
    unsigned seed = 0;
};

// Tree graph with a trunk chain and four limbs, partitioned into the five parts.
SkeletonGraph make_synthetic_graph(int joint_count);

Dataset generate_synthetic(const SyntheticSpec& spec);

SyntheticSpec synthetic_spec_from_json_file(const std::string& path);

}  // namespace tsrnn
