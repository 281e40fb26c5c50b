#include "tsrnn/fusion.hpp"

namespace tsrnn {

void FusionConfig::validate() const {
    if (lambda < 0.0 || lambda > 1.0) throw ConfigError("fusion weight must be in [0,1]");
    if (tau < 0) throw ConfigError("spatial window must be positive (or 0 for T/4)");
}

ClassPosterior fuse(const ClassPosterior& temporal, const ClassPosterior& spatial,
                    double lambda) {
    if (temporal.classes() != spatial.classes())
        throw InvalidInputError("fuse: class count mismatch");
    if (lambda < 0.0 || lambda > 1.0) throw InvalidInputError("fuse: weight must be in [0,1]");
    ClassPosterior out;
    out.probs = lambda * temporal.probs + (1.0 - lambda) * spatial.probs;
    return out;
}

ClassPosterior average_posteriors(const std::vector<ClassPosterior>& posts) {
    if (posts.empty()) throw InvalidInputError("average_posteriors: empty list");
    ClassPosterior out;
    out.probs = Vec::Zero(posts.front().classes());
    for (const auto& p : posts) {
        if (p.classes() != out.classes())
            throw InvalidInputError("average_posteriors: class count mismatch");
        out.probs += p.probs;
    }
    out.probs /= static_cast<double>(posts.size());
    return out;
}

int predict(const ClassPosterior& post) {
    int best = 0;
    for (int c = 1; c < post.classes(); ++c)
        if (post.probs[c] > post.probs[best]) best = c;
    return best;
}

std::vector<double> sweep_lambda(const std::vector<ClassPosterior>& temporal,
                                 const std::vector<ClassPosterior>& spatial,
                                 const std::vector<int>& labels,
                                 const std::vector<double>& lambda_grid) {
    if (temporal.size() != spatial.size() || temporal.size() != labels.size())
        throw InvalidInputError("sweep_lambda: list size mismatch");
    if (temporal.empty()) throw InvalidInputError("sweep_lambda: no sequences");

    std::vector<double> accs;
    accs.reserve(lambda_grid.size());
    for (double lambda : lambda_grid) {
        int correct = 0;
        for (size_t i = 0; i < temporal.size(); ++i)
            if (predict(fuse(temporal[i], spatial[i], lambda)) == labels[i]) ++correct;
        accs.push_back(static_cast<double>(correct) / static_cast<double>(temporal.size()));
    }
    return accs;
}

}  // namespace tsrnn
