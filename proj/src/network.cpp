#include "tsrnn/network.hpp"

#include <cmath>
#include <random>

namespace tsrnn {

NetworkVariant parse_variant(const std::string& name) {
    if (name == "stacked") return NetworkVariant::Stacked;
    if (name == "hierarchical") return NetworkVariant::Hierarchical;
    if (name == "spatial") return NetworkVariant::Spatial;
    throw ConfigError("unknown network variant: " + name);
}

std::string variant_name(NetworkVariant v) {
    switch (v) {
        case NetworkVariant::Stacked: return "stacked";
        case NetworkVariant::Hierarchical: return "hierarchical";
        case NetworkVariant::Spatial: return "spatial";
    }
    return "?";
}

void NetworkSpec::validate() const {
    if (input_dim < 1) throw ConfigError("network input_dim must be positive");
    if (class_count < 1) throw ConfigError("network class_count must be positive");
    if (layer_widths.empty()) throw ConfigError("network needs at least one layer");
    for (int w : layer_widths)
        if (w < 1) throw ConfigError("layer widths must be positive");
    if (variant == NetworkVariant::Hierarchical) {
        if (part_widths.empty()) throw ConfigError("hierarchical network needs part widths");
        for (int w : part_widths)
            if (w < 1) throw ConfigError("part widths must be positive");
        if (part_input_dims.size() != kPartCount)
            throw ConfigError("hierarchical network needs 5 part input dims");
        int sum = 0;
        for (int d : part_input_dims) {
            if (d < 1) throw ConfigError("part input dims must be positive");
            sum += d;
        }
        if (sum != input_dim)
            throw ConfigError("part input dims must sum to input_dim");
    } else if (!part_widths.empty()) {
        throw ConfigError("part widths only apply to the hierarchical variant");
    }
}

namespace {

NetworkParams shaped_params(const NetworkSpec& spec) {
    NetworkParams p;
    int head_input;
    if (spec.variant == NetworkVariant::Hierarchical) {
        p.part_stacks.resize(kPartCount);
        for (int part = 0; part < kPartCount; ++part) {
            int in = spec.part_input_dims[part];
            for (int w : spec.part_widths) {
                p.part_stacks[part].push_back(LstmLayerParams::zeros(in, w));
                in = w;
            }
        }
        int in = spec.part_widths.back() * kPartCount;
        for (int w : spec.layer_widths) {
            p.layers.push_back(LstmLayerParams::zeros(in, w));
            in = w;
        }
        head_input = spec.layer_widths.back();
    } else {
        int in = spec.input_dim;
        for (int w : spec.layer_widths) {
            p.layers.push_back(LstmLayerParams::zeros(in, w));
            in = w;
        }
        head_input = spec.layer_widths.back();
    }
    p.head.W = Mat::Zero(spec.class_count, head_input);
    p.head.b = Vec::Zero(spec.class_count);
    return p;
}

Vec softmax(const Vec& logits) {
    const double m = logits.maxCoeff();
    Vec e = (logits.array() - m).exp();
    return e / e.sum();
}

void init_layer(LstmLayerParams& p, std::mt19937_64& rng) {
    auto fill_mat = [&rng](Mat& m) {
        const double a = std::sqrt(6.0 / static_cast<double>(m.rows() + m.cols()));
        std::uniform_real_distribution<double> dist(-a, a);
        for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = dist(rng);
    };
    auto fill_vec = [&rng](Vec& v) {
        const double a = std::sqrt(6.0 / static_cast<double>(2 * v.size()));
        std::uniform_real_distribution<double> dist(-a, a);
        for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = dist(rng);
    };
    fill_mat(p.Wxi); fill_mat(p.Wxf); fill_mat(p.Wxc); fill_mat(p.Wxo);
    fill_mat(p.Whi); fill_mat(p.Whf); fill_mat(p.Whc); fill_mat(p.Who);
    fill_vec(p.wci); fill_vec(p.wcf); fill_vec(p.wco);
    p.bf.setOnes();  // bi, bc, bo stay zero
}

}  // namespace

NetworkParams init_params(const NetworkSpec& spec, unsigned seed) {
    spec.validate();
    NetworkParams p = shaped_params(spec);
    std::mt19937_64 rng(seed);
    for (auto& stack : p.part_stacks)
        for (auto& layer : stack) init_layer(layer, rng);
    for (auto& layer : p.layers) init_layer(layer, rng);
    {
        const double a =
            std::sqrt(6.0 / static_cast<double>(p.head.W.rows() + p.head.W.cols()));
        std::uniform_real_distribution<double> dist(-a, a);
        for (Eigen::Index i = 0; i < p.head.W.size(); ++i) p.head.W.data()[i] = dist(rng);
    }
    return p;
}

std::vector<Mat> split_part_inputs(const Mat& inputs, const SkeletonGraph& graph, int dims) {
    std::vector<Mat> out(kPartCount);
    for (int p = 0; p < kPartCount; ++p) {
        const auto& joints = graph.parts[p];
        Mat block(inputs.rows(), static_cast<Eigen::Index>(joints.size()) * dims);
        for (size_t k = 0; k < joints.size(); ++k)
            block.middleCols(static_cast<Eigen::Index>(k) * dims, dims) =
                inputs.middleCols(static_cast<Eigen::Index>(joints[k]) * dims, dims);
        out[p] = std::move(block);
    }
    return out;
}

ClassPosterior forward(const NetworkSpec& spec, const NetworkParams& params, const Mat& inputs,
                       int valid_length, const SkeletonGraph* graph, ForwardCache* cache) {
    spec.validate();
    if (valid_length < 1) throw InvalidInputError("forward: valid_length must be >= 1");
    if (valid_length > inputs.rows())
        throw InvalidInputError("forward: valid_length exceeds input length");
    if (inputs.cols() != spec.input_dim)
        throw InvalidInputError("forward: input width does not match spec");
    const int steps = valid_length;

    Mat x;
    if (spec.variant == NetworkVariant::Hierarchical) {
        if (!graph) throw ConfigError("hierarchical forward requires the skeleton graph");
        const int dims = spec.input_dim / graph->joint_count;
        if (dims * graph->joint_count != spec.input_dim)
            throw ConfigError("input_dim is not a multiple of joint_count");
        auto part_inputs = split_part_inputs(inputs.topRows(steps), *graph, dims);
        for (int p = 0; p < kPartCount; ++p)
            if (part_inputs[p].cols() != spec.part_input_dims[p])
                throw ConfigError("part partition inconsistent with input_dim");

        if (cache) {
            cache->part_caches.assign(kPartCount, {});
            cache->part_hidden.resize(kPartCount);
        }
        Mat body_input(steps, static_cast<Eigen::Index>(spec.part_widths.back()) * kPartCount);
        for (int p = 0; p < kPartCount; ++p) {
            Mat ph = part_inputs[p];
            for (size_t l = 0; l < params.part_stacks[p].size(); ++l) {
                LstmCache* lc = nullptr;
                if (cache) {
                    cache->part_caches[p].emplace_back();
                    lc = &cache->part_caches[p].back();
                }
                ph = lstm_forward(params.part_stacks[p][l], ph, steps, lc);
            }
            if (cache) cache->part_hidden[p] = ph;
            body_input.middleCols(static_cast<Eigen::Index>(p) * spec.part_widths.back(),
                                  spec.part_widths.back()) = ph;
        }
        x = std::move(body_input);
    } else {
        x = inputs.topRows(steps);
    }

    if (cache) cache->layer_caches.clear();
    for (size_t l = 0; l < params.layers.size(); ++l) {
        LstmCache* lc = nullptr;
        if (cache) {
            cache->layer_caches.emplace_back();
            lc = &cache->layer_caches.back();
        }
        x = lstm_forward(params.layers[l], x, steps, lc);
    }

    Vec readout = x.row(steps - 1).transpose();
    Vec logits = params.head.W * readout + params.head.b;
    ClassPosterior post;
    post.probs = softmax(logits);
    if (cache) {
        cache->readout = std::move(readout);
        cache->logits = std::move(logits);
        cache->probs = post.probs;
        cache->steps = steps;
    }
    return post;
}

double cross_entropy_logits(const Vec& logits, int label) {
    if (label < 0 || label >= logits.size())
        throw InvalidInputError("cross_entropy: label out of range");
    const double m = logits.maxCoeff();
    const double lse = m + std::log((logits.array() - m).exp().sum());
    return lse - logits[label];
}

double cross_entropy(const ClassPosterior& post, int label) {
    if (label < 0 || label >= post.classes())
        throw InvalidInputError("cross_entropy: label out of range");
    return -std::log(std::max(post.probs[label], 1e-300));
}

void backward(const NetworkSpec& spec, const NetworkParams& params, const ForwardCache& cache,
              int label, const SkeletonGraph* graph, NetworkParams& grads) {
    if (label < 0 || label >= spec.class_count)
        throw InvalidInputError("backward: label out of range");
    const int steps = cache.steps;

    Vec dlogits = cache.probs;
    dlogits[label] -= 1.0;
    grads.head.W.noalias() += dlogits * cache.readout.transpose();
    grads.head.b += dlogits;

    // Gradient w.r.t. the top stack's hidden sequence: head reads the last step only.
    Mat dh = Mat::Zero(steps, params.layers.back().hidden());
    dh.row(steps - 1) = (params.head.W.transpose() * dlogits).transpose();

    for (int l = static_cast<int>(params.layers.size()) - 1; l >= 0; --l)
        dh = lstm_backward(params.layers[l], cache.layer_caches[l], dh, grads.layers[l]);

    if (spec.variant == NetworkVariant::Hierarchical) {
        (void)graph;
        const int pw = spec.part_widths.back();
        for (int p = 0; p < kPartCount; ++p) {
            Mat dpart = dh.middleCols(static_cast<Eigen::Index>(p) * pw, pw);
            for (int l = static_cast<int>(params.part_stacks[p].size()) - 1; l >= 0; --l)
                dpart = lstm_backward(params.part_stacks[p][l], cache.part_caches[p][l], dpart,
                                      grads.part_stacks[p][l]);
        }
    }
}

NetworkParams zeros_like(const NetworkParams& params) {
    NetworkParams z;
    z.part_stacks.resize(params.part_stacks.size());
    for (size_t p = 0; p < params.part_stacks.size(); ++p)
        for (const auto& layer : params.part_stacks[p])
            z.part_stacks[p].push_back(LstmLayerParams::zeros(layer.input(), layer.hidden()));
    for (const auto& layer : params.layers)
        z.layers.push_back(LstmLayerParams::zeros(layer.input(), layer.hidden()));
    z.head.W = Mat::Zero(params.head.W.rows(), params.head.W.cols());
    z.head.b = Vec::Zero(params.head.b.size());
    return z;
}

void visit_tensors(NetworkParams& params, const TensorVisitor& fn) {
    for (size_t p = 0; p < params.part_stacks.size(); ++p)
        for (size_t l = 0; l < params.part_stacks[p].size(); ++l)
            visit_lstm_tensors(params.part_stacks[p][l],
                               "part" + std::to_string(p) + ".layer" + std::to_string(l) + ".",
                               fn);
    for (size_t l = 0; l < params.layers.size(); ++l)
        visit_lstm_tensors(params.layers[l], "layer" + std::to_string(l) + ".", fn);
    fn("head.W", params.head.W.data(), static_cast<std::size_t>(params.head.W.size()));
    fn("head.b", params.head.b.data(), static_cast<std::size_t>(params.head.b.size()));
}

std::size_t parameter_count(const NetworkSpec& spec) {
    NetworkParams p = shaped_params(spec);
    std::size_t total = 0;
    visit_tensors(p, [&total](const std::string&, double*, std::size_t n) { total += n; });
    return total;
}

}  // namespace tsrnn
