#include "tsrnn/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>

#include "tsrnn/json_io.hpp"
#include "tsrnn/preprocess.hpp"

namespace tsrnn {

using nlohmann::json;

void RunConfig::validate() const {
    if (fixed_length < 1) throw ConfigError("fixed length T must be >= 1");
    if (temporal_widths.empty() || spatial_widths.empty())
        throw ConfigError("stream widths must be non-empty");
    if (temporal_variant == NetworkVariant::Spatial)
        throw ConfigError("temporal stream variant must be stacked or hierarchical");
    if (temporal_variant == NetworkVariant::Hierarchical && temporal_part_widths.empty())
        throw ConfigError("hierarchical temporal stream needs part widths");
    if (folds < 2) throw ConfigError("fold count must be >= 2");
    if (fold_index < 0 || fold_index >= folds) throw ConfigError("fold index out of range");
    augment.validate();
    train.validate();
    fusion.validate();
    if (fusion.tau > fixed_length) throw ConfigError("spatial window exceeds fixed length");
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config file: ") + e.what());
    }

    RunConfig c;
    try {
        const auto& ds = j.at("dataset");
        c.dataset_path = ds.at("path").get<std::string>();
        c.dataset_format = parse_format(ds.value("format", std::string("jsonl")));
        c.fixed_length = j.value("fixed_length", c.fixed_length);

        if (j.contains("temporal")) {
            const auto& t = j.at("temporal");
            c.temporal_variant = parse_variant(t.value("variant", std::string("stacked")));
            c.temporal_widths = t.value("widths", c.temporal_widths);
            c.temporal_part_widths = t.value("part_widths", c.temporal_part_widths);
        }
        if (j.contains("spatial")) {
            const auto& s = j.at("spatial");
            c.spatial_widths = s.value("widths", c.spatial_widths);
            c.spatial_order = parse_order_kind(s.value("order", std::string("traversal")));
        }
        if (j.contains("augment")) {
            c.augment = j.at("augment").get<AugmentConfig>();
            c.augment_enabled = j.at("augment").value("enabled", true);
        }
        if (j.contains("train")) c.train = j.at("train").get<TrainConfig>();
        if (j.contains("fusion")) {
            c.fusion.lambda = j.at("fusion").value("lambda", c.fusion.lambda);
            c.fusion.tau = j.at("fusion").value("tau", c.fusion.tau);
        }
        if (j.contains("split")) {
            const auto& s = j.at("split");
            c.split_mode = parse_split_mode(s.value("mode", std::string("by-sequence")));
            c.folds = s.value("folds", c.folds);
            c.fold_index = s.value("fold", c.fold_index);
        }
        c.out_dir = j.value("out_dir", std::string{});
        c.seed = j.value("seed", 0u);
        c.deterministic = j.value("deterministic", true);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config file: ") + e.what());
    }
    c.validate();
    return c;
}

void save_run_config(const RunConfig& c, const std::string& path) {
    json j = {
        {"dataset",
         {{"path", c.dataset_path},
          {"format",
           c.dataset_format == DatasetFormat::Jsonl ? "jsonl" : "synthetic-manifest"}}},
        {"fixed_length", c.fixed_length},
        {"temporal",
         {{"variant", variant_name(c.temporal_variant)},
          {"widths", c.temporal_widths},
          {"part_widths", c.temporal_part_widths}}},
        {"spatial",
         {{"widths", c.spatial_widths},
          {"order", c.spatial_order == OrderKind::Chain ? "chain" : "traversal"}}},
        {"augment", c.augment},
        {"train", c.train},
        {"fusion", {{"lambda", c.fusion.lambda}, {"tau", c.fusion.tau}}},
        {"split",
         {{"mode", c.split_mode == SplitMode::BySequence
                       ? "by-sequence"
                       : (c.split_mode == SplitMode::BySubject ? "by-subject" : "by-view")},
          {"folds", c.folds},
          {"fold", c.fold_index}}},
        {"out_dir", c.out_dir},
        {"seed", c.seed},
        {"deterministic", c.deterministic},
    };
    j["augment"]["enabled"] = c.augment_enabled;
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config file: " + path);
    out << j.dump(2) << "\n";
}

PreparedData prepare_data(const RunConfig& cfg) {
    cfg.validate();
    PreparedData data;
    data.ds = load_dataset(cfg.dataset_path, cfg.dataset_format);
    if (data.ds.sequences.empty()) throw DataError("dataset has no sequences");

    for (auto& seq : data.ds.sequences) {
        if (seq.dims == 3) seq = normalize_center(seq, data.ds.graph);
        seq = resample_to_length(seq, cfg.fixed_length);
    }
    data.order = cfg.spatial_order == OrderKind::Chain ? chain_order(data.ds.graph)
                                                       : traversal_order(data.ds.graph);
    auto folds = split_folds(data.ds, cfg.folds, cfg.split_mode, cfg.seed);
    data.train_idx = folds[cfg.fold_index].train;
    data.test_idx = folds[cfg.fold_index].test;
    return data;
}

NetworkSpec make_stream_spec(const RunConfig& cfg, const PreparedData& data, StreamKind kind) {
    const int dims = data.ds.sequences.empty() ? 3 : data.ds.sequences.front().dims;
    NetworkSpec spec;
    spec.class_count = data.ds.class_count;
    if (kind == StreamKind::Temporal) {
        spec.variant = cfg.temporal_variant;
        spec.layer_widths = cfg.temporal_widths;
        spec.input_dim = data.ds.graph.joint_count * dims;
        if (cfg.temporal_variant == NetworkVariant::Hierarchical) {
            spec.part_widths = cfg.temporal_part_widths;
            for (int p = 0; p < kPartCount; ++p)
                spec.part_input_dims.push_back(
                    static_cast<int>(data.ds.graph.parts[p].size()) * dims);
        }
    } else {
        spec.variant = NetworkVariant::Spatial;
        spec.layer_widths = cfg.spatial_widths;
        spec.input_dim = cfg.spatial_tau(cfg.fixed_length) * dims;
    }
    spec.validate();
    return spec;
}

namespace {

// Derived seeds keep the two streams' draws independent but reproducible.
unsigned mix_seed(unsigned base, unsigned salt) {
    std::uint64_t z = (static_cast<std::uint64_t>(base) << 32) ^ (salt * 0x9e3779b97f4a7c15ULL);
    z ^= z >> 29;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 32;
    return static_cast<unsigned>(z);
}

Checkpoint train_stream(const RunConfig& cfg, const PreparedData& data, StreamKind kind,
                        std::vector<EpochLog>& log) {
    const NetworkSpec spec = make_stream_spec(cfg, data, kind);
    const SkeletonGraph* graph =
        spec.variant == NetworkVariant::Hierarchical ? &data.ds.graph : nullptr;
    const std::string name = kind == StreamKind::Temporal ? "temporal" : "spatial";
    const int tau = cfg.spatial_tau(cfg.fixed_length);

    const unsigned stream_seed = mix_seed(cfg.seed, kind == StreamKind::Temporal ? 1 : 2);
    NetworkParams params = init_params(spec, stream_seed);
    std::mt19937 order_rng(mix_seed(stream_seed, 11));
    std::mt19937 aug_rng(mix_seed(stream_seed, 13));
    std::mt19937 center_rng(mix_seed(stream_seed, 17));

    std::vector<int> indices = data.train_idx;
    if (indices.empty()) throw DataError("training fold is empty");

    for (int epoch = 0; epoch < cfg.train.epochs; ++epoch) {
        std::shuffle(indices.begin(), indices.end(), order_rng);
        double epoch_loss = 0.0;
        int batches = 0;
        for (size_t start = 0; start < indices.size(); start += cfg.train.batch_size) {
            const size_t end = std::min(indices.size(), start + cfg.train.batch_size);
            std::vector<TrainSample> batch;
            batch.reserve(end - start);
            for (size_t k = start; k < end; ++k) {
                const SkeletonSequence* seq = &data.ds.sequences[indices[k]];
                SkeletonSequence augmented;
                if (cfg.augment_enabled && cfg.augment.any_enabled()) {
                    augmented = apply_transform(*seq, sample_transform(cfg.augment, aug_rng));
                    seq = &augmented;
                }
                TrainSample sample;
                sample.label = seq->label;
                if (kind == StreamKind::Temporal) {
                    sample.inputs = seq->frames;
                    sample.valid_length = seq->valid_length;
                } else {
                    const int center = std::uniform_int_distribution<int>(
                        0, seq->total_length() - 1)(center_rng);
                    sample.inputs =
                        build_spatial_input(*seq, data.order, tau, center).steps;
                    sample.valid_length = data.order.length();
                }
                batch.push_back(std::move(sample));
            }
            NetworkParams grads = zeros_like(params);
            epoch_loss += batch_gradient(spec, params, batch, graph, grads);
            sgd_step(params, grads, epoch, cfg.train);
            ++batches;
        }
        log.push_back({name, epoch, learning_rate(cfg.train, epoch),
                       epoch_loss / std::max(1, batches)});
    }

    Checkpoint ckpt;
    ckpt.spec = spec;
    ckpt.seed = stream_seed;
    ckpt.epoch = cfg.train.epochs;
    ckpt.params = std::move(params);
    return ckpt;
}

}  // namespace

TrainOutput train_run(const RunConfig& cfg, const PreparedData& data) {
    TrainOutput out;
    out.temporal = train_stream(cfg, data, StreamKind::Temporal, out.log);
    out.spatial = train_stream(cfg, data, StreamKind::Spatial, out.log);
    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        save_checkpoint(out.temporal, cfg.out_dir + "/temporal.ckpt");
        save_checkpoint(out.spatial, cfg.out_dir + "/spatial.ckpt");
        write_train_log(out.log, cfg.out_dir + "/train_log.csv");
    }
    return out;
}

void write_train_log(const std::vector<EpochLog>& log, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write training log: " + path);
    out << "stream,epoch,lr,loss\n";
    char lr_buf[32];
    for (const auto& row : log) {
        // 10 significant digits round the schedule's 1-ulp products to their
        // decimal values (0.02 * 0.7 prints as 0.014)
        std::snprintf(lr_buf, sizeof(lr_buf), "%.10g", row.lr);
        out << row.stream << "," << row.epoch << "," << lr_buf << ","
            << std::setprecision(17) << row.loss << "\n";
    }
}

EvalOutput eval_run(const RunConfig& cfg, const PreparedData& data, const Checkpoint& temporal,
                    const Checkpoint& spatial) {
    const NetworkSpec t_spec = make_stream_spec(cfg, data, StreamKind::Temporal);
    const NetworkSpec s_spec = make_stream_spec(cfg, data, StreamKind::Spatial);
    auto check_spec = [](const NetworkSpec& want, const NetworkSpec& got, const char* which) {
        json a = want, b = got;
        if (a != b)
            for (auto& [key, value] : a.items())
                if (b.at(key) != value)
                    throw ConfigError(std::string(which) + " checkpoint mismatch in field \"" +
                                      key + "\"");
    };
    check_spec(t_spec, temporal.spec, "temporal");
    check_spec(s_spec, spatial.spec, "spatial");

    const SkeletonGraph* graph =
        t_spec.variant == NetworkVariant::Hierarchical ? &data.ds.graph : nullptr;
    const int tau = cfg.spatial_tau(cfg.fixed_length);
    const auto centers = spatial_centers(cfg.fixed_length, tau, CenterMode::EvalGrid, 0);

    EvalOutput out;
    for (int idx : data.test_idx) {
        const auto& seq = data.ds.sequences[idx];
        out.labels.push_back(seq.label);
        out.temporal.push_back(
            forward(t_spec, temporal.params, seq.frames, seq.valid_length, graph));
        std::vector<ClassPosterior> per_center;
        per_center.reserve(centers.size());
        for (int c : centers) {
            const auto input = build_spatial_input(seq, data.order, tau, c);
            per_center.push_back(forward(s_spec, spatial.params, input.steps,
                                         data.order.length(), nullptr));
        }
        out.spatial.push_back(average_posteriors(per_center));
    }

    std::vector<int> fused_pred, t_pred, s_pred;
    for (size_t i = 0; i < out.labels.size(); ++i) {
        fused_pred.push_back(predict(fuse(out.temporal[i], out.spatial[i], cfg.fusion.lambda)));
        t_pred.push_back(predict(out.temporal[i]));
        s_pred.push_back(predict(out.spatial[i]));
    }
    out.fused_report = evaluate(fused_pred, out.labels, data.ds.class_count);
    out.temporal_accuracy = evaluate(t_pred, out.labels, data.ds.class_count).accuracy;
    out.spatial_accuracy = evaluate(s_pred, out.labels, data.ds.class_count).accuracy;

    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        write_confusion_csv(out.fused_report, cfg.out_dir + "/confusion.csv");
        write_metrics_csv(out.fused_report, cfg.out_dir + "/metrics.csv", data.ds.class_names);
    }
    return out;
}

}  // namespace tsrnn
