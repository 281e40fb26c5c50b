#pragma once

#include <optional>

#include "tsrnn/network.hpp"

namespace tsrnn {

struct TrainConfig {
    double lr0 = 0.02;
    double decay_factor = 0.7;
    int decay_every = 60;
    int epochs = 180;
    int batch_size = 32;
    std::optional<double> grad_clip = 5.0;
    unsigned seed = 0;

    void validate() const;
};

// lr0 * decay_factor^(epoch / decay_every)
double learning_rate(const TrainConfig& cfg, int epoch);

// One ready-to-train example for a single stream.
struct TrainSample {
    Mat inputs;  // [steps x input_dim]
    int valid_length = 0;
    int label = 0;
};

// Mean cross-entropy over the batch; grads receives the mean gradient.
double batch_gradient(const NetworkSpec& spec, const NetworkParams& params,
                      const std::vector<TrainSample>& batch, const SkeletonGraph* graph,
                      NetworkParams& grads);

double global_grad_norm(NetworkParams& grads);

// params -= lr(epoch) * grads, with optional global-norm clipping first.
// Throws NumericError on non-finite gradients.
void sgd_step(NetworkParams& params, NetworkParams& grads, int epoch, const TrainConfig& cfg);

struct GradCheckResult {
    std::string tensor;
    double max_rel_err = 0.0;
};

// Compare analytic batch gradients against central finite differences of the
// batch loss, per parameter tensor. corrupt perturbs one analytic gradient
// entry (negative-control hook).
std::vector<GradCheckResult> gradient_check(const NetworkSpec& spec,
                                            const std::vector<TrainSample>& batch,
                                            const SkeletonGraph* graph, unsigned seed,
                                            double eps = 1e-5, bool corrupt = false);

}  // namespace tsrnn
