#pragma once

#include "tsrnn/skeleton.hpp"

namespace tsrnn {

// Subtract the per-frame mean of graph.center_joints from every joint of each
// valid frame. Requires dims == 3 (runs before two-person concatenation).
SkeletonSequence normalize_center(const SkeletonSequence& seq, const SkeletonGraph& graph);

// Uniform subsample to target_T frames when longer (indices floor(i*L/T)),
// zero-pad at the end when shorter.
SkeletonSequence resample_to_length(const SkeletonSequence& seq, int target_T);

// Interleave two aligned 3D sequences into one 6D sequence, per joint
// (a_x, a_y, a_z, b_x, b_y, b_z).
SkeletonSequence concat_two_person(const SkeletonSequence& a, const SkeletonSequence& b);

}  // namespace tsrnn
