#pragma once

#include <vector>

#include "tsrnn/skeleton.hpp"

namespace tsrnn {

enum class OrderKind { Chain, Traversal };

OrderKind parse_order_kind(const std::string& name);

struct JointOrder {
    std::vector<int> order;
    OrderKind kind = OrderKind::Chain;

    int length() const { return static_cast<int>(order.size()); }
};

// Per-part chains concatenated as arms, trunk, legs; each joint once.
JointOrder chain_order(const SkeletonGraph& graph);

// Euler tour from the root: every arrival emitted, length 2J-1, children
// visited by part priority (arms, trunk, legs) then joint index.
JointOrder traversal_order(const SkeletonGraph& graph);

// One step per joint-order entry; each step is the joint's coordinates over
// the tau frames of a window, frame-major.
struct SpatialInput {
    Mat steps;  // [order_length x tau*dims]
    int center_frame = 0;
    int window = 1;
};

// Window spans [center - tau/2, center - tau/2 + tau); frames outside
// [0, valid_length) contribute zeros.
SpatialInput build_spatial_input(const SkeletonSequence& seq, const JointOrder& order, int tau,
                                 int center_frame);

enum class CenterMode { TrainRandom, EvalGrid };

// Window centers: one uniform random center for training, the covering grid
// tau/2, tau/2+tau, ... for evaluation.
std::vector<int> spatial_centers(int T, int tau, CenterMode mode, unsigned rng_seed);

}  // namespace tsrnn
