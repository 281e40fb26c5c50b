#include "tsrnn/trainer.hpp"

#include <cmath>

namespace tsrnn {

void TrainConfig::validate() const {
    if (lr0 <= 0) throw ConfigError("learning rate must be positive");
    if (decay_factor <= 0 || decay_factor > 1) throw ConfigError("decay factor must be in (0,1]");
    if (decay_every < 1) throw ConfigError("decay period must be >= 1");
    if (epochs < 1) throw ConfigError("epoch count must be >= 1");
    if (batch_size < 1) throw ConfigError("batch size must be >= 1");
    if (grad_clip && *grad_clip <= 0) throw ConfigError("gradient clip must be positive");
}

double learning_rate(const TrainConfig& cfg, int epoch) {
    return cfg.lr0 * std::pow(cfg.decay_factor, epoch / cfg.decay_every);
}

double batch_gradient(const NetworkSpec& spec, const NetworkParams& params,
                      const std::vector<TrainSample>& batch, const SkeletonGraph* graph,
                      NetworkParams& grads) {
    if (batch.empty()) throw InvalidInputError("empty batch");
    double loss = 0.0;
    for (const auto& sample : batch) {
        ForwardCache cache;
        forward(spec, params, sample.inputs, sample.valid_length, graph, &cache);
        loss += cross_entropy_logits(cache.logits, sample.label);
        backward(spec, params, cache, sample.label, graph, grads);
    }
    const double inv_n = 1.0 / static_cast<double>(batch.size());
    visit_tensors(grads, [inv_n](const std::string&, double* data, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) data[i] *= inv_n;
    });
    return loss * inv_n;
}

double global_grad_norm(NetworkParams& grads) {
    double sq = 0.0;
    visit_tensors(grads, [&sq](const std::string&, double* data, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) sq += data[i] * data[i];
    });
    return std::sqrt(sq);
}

void sgd_step(NetworkParams& params, NetworkParams& grads, int epoch, const TrainConfig& cfg) {
    cfg.validate();
    double scale = 1.0;
    const double norm = global_grad_norm(grads);
    if (!std::isfinite(norm))
        throw NumericError("non-finite gradient at epoch " + std::to_string(epoch));
    if (cfg.grad_clip && norm > *cfg.grad_clip) scale = *cfg.grad_clip / norm;

    const double lr = learning_rate(cfg, epoch);
    struct Cursor {
        double* data;
        std::size_t n;
    };
    std::vector<Cursor> gcur;
    visit_tensors(grads, [&gcur](const std::string&, double* data, std::size_t n) {
        gcur.push_back({data, n});
    });
    std::size_t k = 0;
    visit_tensors(params, [&](const std::string&, double* data, std::size_t n) {
        const Cursor& g = gcur[k++];
        for (std::size_t i = 0; i < n; ++i) data[i] -= lr * scale * g.data[i];
    });
}

std::vector<GradCheckResult> gradient_check(const NetworkSpec& spec,
                                            const std::vector<TrainSample>& batch,
                                            const SkeletonGraph* graph, unsigned seed,
                                            double eps, bool corrupt) {
    NetworkParams params = init_params(spec, seed);
    NetworkParams analytic = zeros_like(params);
    batch_gradient(spec, params, batch, graph, analytic);
    if (corrupt) {
        bool done = false;
        visit_tensors(analytic, [&done](const std::string&, double* data, std::size_t n) {
            if (!done && n > 0) {
                data[0] += 1.0;
                done = true;
            }
        });
    }

    auto batch_loss = [&]() {
        double loss = 0.0;
        for (const auto& sample : batch)
            loss += cross_entropy(
                forward(spec, params, sample.inputs, sample.valid_length, graph), sample.label);
        return loss / static_cast<double>(batch.size());
    };

    struct View {
        std::string name;
        double* data;
        std::size_t n;
    };
    std::vector<View> pviews, gviews;
    visit_tensors(params, [&pviews](const std::string& name, double* data, std::size_t n) {
        pviews.push_back({name, data, n});
    });
    visit_tensors(analytic, [&gviews](const std::string& name, double* data, std::size_t n) {
        gviews.push_back({name, data, n});
    });

    std::vector<GradCheckResult> results;
    for (std::size_t t = 0; t < pviews.size(); ++t) {
        GradCheckResult r{pviews[t].name, 0.0};
        for (std::size_t i = 0; i < pviews[t].n; ++i) {
            double& w = pviews[t].data[i];
            const double saved = w;
            w = saved + eps;
            const double lp = batch_loss();
            w = saved - eps;
            const double lm = batch_loss();
            w = saved;
            const double fd = (lp - lm) / (2 * eps);
            const double an = gviews[t].data[i];
            const double rel =
                std::abs(an - fd) / std::max({std::abs(an), std::abs(fd), 1e-8});
            r.max_rel_err = std::max(r.max_rel_err, rel);
        }
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace tsrnn
