#pragma once

#include <vector>

#include "tsrnn/network.hpp"

namespace tsrnn {

struct FusionConfig {
    double lambda = 0.9;  // temporal-stream weight
    int tau = 0;          // spatial window; 0 means T/4 at run time

    void validate() const;
};

// lambda*p_temporal + (1-lambda)*p_spatial.
ClassPosterior fuse(const ClassPosterior& temporal, const ClassPosterior& spatial, double lambda);

// Elementwise mean (spatial grid centers, two-person score averaging).
ClassPosterior average_posteriors(const std::vector<ClassPosterior>& posts);

// Argmax; ties broken toward the lowest class index.
int predict(const ClassPosterior& post);

// Accuracy for each lambda on the grid, fusing per-sequence posterior pairs.
std::vector<double> sweep_lambda(const std::vector<ClassPosterior>& temporal,
                                 const std::vector<ClassPosterior>& spatial,
                                 const std::vector<int>& labels,
                                 const std::vector<double>& lambda_grid);

}  // namespace tsrnn
