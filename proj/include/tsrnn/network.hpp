#pragma once

#include <optional>
#include <vector>

#include "tsrnn/lstm.hpp"
#include "tsrnn/skeleton.hpp"

namespace tsrnn {

enum class NetworkVariant { Stacked, Hierarchical, Spatial };

NetworkVariant parse_variant(const std::string& name);
std::string variant_name(NetworkVariant v);

// Declarative description of one stream. Stacked/spatial: layer_widths is the
// stack, e.g. {512, 512}. Hierarchical: part_widths is the per-level width of
// each of the five part stacks and layer_widths the body-level stack, e.g.
// part {128}, body {512} for P128,B512.
struct NetworkSpec {
    NetworkVariant variant = NetworkVariant::Stacked;
    std::vector<int> layer_widths{128};
    std::vector<int> part_widths;            // hierarchical only
    int input_dim = 0;
    int class_count = 0;
    std::vector<int> part_input_dims;        // hierarchical: 5 per-part input dims

    void validate() const;
};

struct SoftmaxParams {
    Mat W;  // [class_count x hidden]
    Vec b;  // [class_count]
};

struct NetworkParams {
    std::vector<std::vector<LstmLayerParams>> part_stacks;  // hierarchical: 5 stacks
    std::vector<LstmLayerParams> layers;  // stacked/spatial stack, or body stack
    SoftmaxParams head;
};

struct ClassPosterior {
    Vec probs;

    int classes() const { return static_cast<int>(probs.size()); }
};

// Forward activations kept for the backward pass.
struct ForwardCache {
    std::vector<std::vector<LstmCache>> part_caches;
    std::vector<LstmCache> layer_caches;
    std::vector<Mat> part_hidden;  // per-part hidden sequences
    Vec readout;                   // hidden state fed to the head
    Vec logits;
    Vec probs;
    int steps = 0;
};

// Glorot-uniform weights, zero biases except forget bias = 1.
NetworkParams init_params(const NetworkSpec& spec, unsigned seed);

// Build per-frame part inputs for the hierarchical variant: columns of the
// input matrix gathered per part (part order = BodyPart order, joints in
// part-list order). dims = input_dim / joint_count.
std::vector<Mat> split_part_inputs(const Mat& inputs, const SkeletonGraph& graph, int dims);

// Run one stream on an input matrix [T x input_dim], reading out the hidden
// state at step valid_length-1. graph is required for hierarchical.
ClassPosterior forward(const NetworkSpec& spec, const NetworkParams& params, const Mat& inputs,
                       int valid_length, const SkeletonGraph* graph = nullptr,
                       ForwardCache* cache = nullptr);

// Numerically stable -log softmax(logits)[label].
double cross_entropy_logits(const Vec& logits, int label);
double cross_entropy(const ClassPosterior& post, int label);

// Accumulate exact gradients of the cross-entropy at `label` for one example
// into `grads` (same shape as params), given the cached forward pass.
void backward(const NetworkSpec& spec, const NetworkParams& params, const ForwardCache& cache,
              int label, const SkeletonGraph* graph, NetworkParams& grads);

NetworkParams zeros_like(const NetworkParams& params);
void visit_tensors(NetworkParams& params, const TensorVisitor& fn);
std::size_t parameter_count(const NetworkSpec& spec);

}  // namespace tsrnn
