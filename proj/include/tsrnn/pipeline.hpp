#pragma once

#include <string>
#include <vector>

#include "tsrnn/augment.hpp"
#include "tsrnn/checkpoint.hpp"
#include "tsrnn/dataset_io.hpp"
#include "tsrnn/fusion.hpp"
#include "tsrnn/metrics.hpp"
#include "tsrnn/serialize.hpp"
#include "tsrnn/split.hpp"
#include "tsrnn/trainer.hpp"

namespace tsrnn {

// Full run description, loaded from a JSON config file.
struct RunConfig {
    std::string dataset_path;
    DatasetFormat dataset_format = DatasetFormat::Jsonl;
    int fixed_length = 100;  // T

    NetworkVariant temporal_variant = NetworkVariant::Stacked;
    std::vector<int> temporal_widths{512, 512};
    std::vector<int> temporal_part_widths;  // hierarchical temporal stream

    std::vector<int> spatial_widths{512, 512};
    OrderKind spatial_order = OrderKind::Traversal;

    bool augment_enabled = false;
    AugmentConfig augment;
    TrainConfig train;
    FusionConfig fusion;

    SplitMode split_mode = SplitMode::BySequence;
    int folds = 5;
    int fold_index = 0;

    std::string out_dir;
    unsigned seed = 0;
    bool deterministic = true;

    int spatial_tau(int T) const { return fusion.tau > 0 ? fusion.tau : std::max(1, T / 4); }
    void validate() const;
};

RunConfig load_run_config(const std::string& path);
void save_run_config(const RunConfig& cfg, const std::string& path);

// Dataset after center normalization and fixed-length resampling, plus the
// joint order and the train/test split for the configured fold.
struct PreparedData {
    Dataset ds;
    JointOrder order;
    std::vector<int> train_idx;
    std::vector<int> test_idx;
};

PreparedData prepare_data(const RunConfig& cfg);

enum class StreamKind { Temporal, Spatial };

NetworkSpec make_stream_spec(const RunConfig& cfg, const PreparedData& data, StreamKind kind);

struct EpochLog {
    std::string stream;
    int epoch = 0;
    double lr = 0.0;
    double loss = 0.0;
};

struct TrainOutput {
    Checkpoint temporal;
    Checkpoint spatial;
    std::vector<EpochLog> log;
};

// Train both streams independently on the training fold; augmentation applies
// to training batches only.
TrainOutput train_run(const RunConfig& cfg, const PreparedData& data);

void write_train_log(const std::vector<EpochLog>& log, const std::string& path);

struct EvalOutput {
    std::vector<ClassPosterior> temporal;
    std::vector<ClassPosterior> spatial;
    std::vector<int> labels;
    EvalReport fused_report;
    double temporal_accuracy = 0.0;
    double spatial_accuracy = 0.0;
};

// Evaluate the test fold: temporal posterior, grid-averaged spatial posterior,
// late fusion. Never applies augmentation.
EvalOutput eval_run(const RunConfig& cfg, const PreparedData& data, const Checkpoint& temporal,
                    const Checkpoint& spatial);

}  // namespace tsrnn
