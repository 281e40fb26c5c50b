#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "tsrnn/pipeline.hpp"
#include "tsrnn/synthetic.hpp"

namespace {

using namespace tsrnn;

RunConfig load_config(const std::string& path, std::optional<unsigned> seed,
                      std::optional<std::string> out_dir, bool deterministic) {
    RunConfig cfg = load_run_config(path);
    if (seed) cfg.seed = *seed;
    if (out_dir) cfg.out_dir = *out_dir;
    if (deterministic) cfg.deterministic = true;
    return cfg;
}

int cmd_train(const RunConfig& cfg) {
    PreparedData data = prepare_data(cfg);
    TrainOutput out = train_run(cfg, data);
    std::cout << "trained " << out.log.size() << " epoch rows; checkpoints in " << cfg.out_dir
              << "\n";
    return 0;
}

int cmd_eval(const RunConfig& cfg, const std::string& ckpt_dir) {
    PreparedData data = prepare_data(cfg);
    Checkpoint temporal = load_checkpoint(ckpt_dir + "/temporal.ckpt");
    Checkpoint spatial = load_checkpoint(ckpt_dir + "/spatial.ckpt");
    EvalOutput out = eval_run(cfg, data, temporal, spatial);
    std::cout << "fused accuracy " << out.fused_report.accuracy << " (temporal "
              << out.temporal_accuracy << ", spatial " << out.spatial_accuracy << ") on "
              << out.labels.size() << " sequences\n";
    return 0;
}

int cmd_sweep_lambda(const RunConfig& cfg, const std::string& ckpt_dir, int grid_points) {
    PreparedData data = prepare_data(cfg);
    Checkpoint temporal = load_checkpoint(ckpt_dir + "/temporal.ckpt");
    Checkpoint spatial = load_checkpoint(ckpt_dir + "/spatial.ckpt");
    EvalOutput out = eval_run(cfg, data, temporal, spatial);

    std::vector<double> grid;
    for (int i = 0; i < grid_points; ++i)
        grid.push_back(static_cast<double>(i) / (grid_points - 1));
    auto accs = sweep_lambda(out.temporal, out.spatial, out.labels, grid);
    const std::string path =
        (cfg.out_dir.empty() ? std::string(".") : cfg.out_dir) + "/lambda_sweep.csv";
    if (!cfg.out_dir.empty()) std::filesystem::create_directories(cfg.out_dir);
    write_lambda_sweep_csv(grid, accs, path);
    for (size_t i = 0; i < grid.size(); ++i)
        std::cout << "lambda " << grid[i] << " accuracy " << accs[i] << "\n";
    return 0;
}

int cmd_gradcheck(unsigned seed, bool corrupt) {
    // Tiny doubles-only specs keep finite differences tractable.
    const int T = 5, classes = 3;
    SkeletonGraph graph = make_synthetic_graph(10);  // 5 parts of 2 joints
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);

    auto random_batch = [&](int input_dim, int steps) {
        std::vector<TrainSample> batch;
        for (int b = 0; b < 2; ++b) {
            TrainSample s;
            s.inputs = Mat::NullaryExpr(steps, input_dim, [&]() { return dist(rng); });
            s.valid_length = steps;
            s.label = b % classes;
            batch.push_back(std::move(s));
        }
        return batch;
    };

    struct Case {
        const char* name;
        NetworkSpec spec;
        const SkeletonGraph* graph;
        int steps;
    };
    NetworkSpec stacked;
    stacked.variant = NetworkVariant::Stacked;
    stacked.layer_widths = {4, 4};
    stacked.input_dim = 6;
    stacked.class_count = classes;

    NetworkSpec hier;
    hier.variant = NetworkVariant::Hierarchical;
    hier.part_widths = {2};
    hier.layer_widths = {4};
    hier.input_dim = graph.joint_count * 3;
    hier.class_count = classes;
    for (int p = 0; p < kPartCount; ++p)
        hier.part_input_dims.push_back(static_cast<int>(graph.parts[p].size()) * 3);

    NetworkSpec spatial;
    spatial.variant = NetworkVariant::Spatial;
    spatial.layer_widths = {4, 4};
    spatial.input_dim = 6;
    spatial.class_count = classes;

    const Case cases[] = {{"stacked[4,4]", stacked, nullptr, T},
                          {"hierarchical P2,B4", hier, &graph, T},
                          {"spatial[4,4]", spatial, nullptr, 2 * graph.joint_count - 1}};

    bool ok = true;
    for (const auto& c : cases) {
        auto batch = random_batch(c.spec.input_dim, c.steps);
        auto results = gradient_check(c.spec, batch, c.graph, seed, 1e-5, corrupt);
        double worst = 0.0;
        for (const auto& r : results) {
            std::cout << c.name << " " << r.tensor << " max_rel_err " << r.max_rel_err << "\n";
            worst = std::max(worst, r.max_rel_err);
            if (r.max_rel_err >= 1e-4) ok = false;
        }
        std::cout << c.name << " worst " << worst << (worst < 1e-4 ? " PASS" : " FAIL") << "\n";
    }
    return ok ? 0 : 3;
}

int cmd_generate(const std::string& manifest, const std::string& out_path) {
    Dataset ds = generate_synthetic(synthetic_spec_from_json_file(manifest));
    save_dataset(ds, out_path);
    std::cout << "wrote " << ds.sequences.size() << " sequences to " << out_path << "\n";
    return 0;
}

int cmd_serialize(const std::string& dataset_path, const std::string& kind) {
    Dataset ds = load_dataset(dataset_path);
    JointOrder order = parse_order_kind(kind) == OrderKind::Chain ? chain_order(ds.graph)
                                                                  : traversal_order(ds.graph);
    for (int i = 0; i < order.length(); ++i) {
        const int j = order.order[i];
        std::cout << (i ? "," : "")
                  << (j < static_cast<int>(ds.graph.joint_names.size())
                          ? ds.graph.joint_names[j]
                          : std::to_string(j));
    }
    std::cout << "\n";
    return 0;
}

int cmd_augment_preview(const std::string& dataset_path, unsigned seed, bool rotation,
                        bool scaling_on, bool shear_on) {
    Dataset ds = load_dataset(dataset_path);
    if (ds.sequences.empty()) throw DataError("dataset has no sequences to preview");
    AugmentConfig cfg;
    cfg.rotation_enabled = rotation;
    cfg.scaling_enabled = scaling_on;
    cfg.shear_enabled = shear_on;
    std::mt19937 rng(seed);
    Transform3 t = sample_transform(cfg, rng);

    std::cout << "matrix:\n" << t.matrix << "\n";
    const auto& seq = ds.sequences.front();
    const auto after = apply_transform(seq, t);
    std::cout << "frame 0 before: " << seq.frames.row(0) << "\n";
    std::cout << "frame 0 after:  " << after.frames.row(0) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-stream recurrent skeleton action recognition"};
    app.require_subcommand(1);

    std::string config_path, ckpt_dir, dataset_path, manifest, out_path, kind = "traversal";
    std::optional<unsigned> seed_flag;
    std::optional<std::string> out_flag;
    bool deterministic = false, corrupt = false;
    bool aug_rot = true, aug_scale = false, aug_shear = false;
    unsigned seed = 0;
    int grid_points = 11;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "run config file")->required();
        cmd->add_option("--seed", seed_flag, "override the config seed");
        cmd->add_option("--out", out_flag, "override the output directory");
        cmd->add_flag("--deterministic", deterministic, "force single-threaded determinism");
    };

    auto* train = app.add_subcommand("train", "train both streams");
    add_common(train);

    auto* eval = app.add_subcommand("eval", "evaluate a checkpoint pair");
    add_common(eval);
    eval->add_option("--checkpoints", ckpt_dir, "directory with temporal.ckpt/spatial.ckpt");

    auto* sweep = app.add_subcommand("sweep-lambda", "fusion-weight accuracy sweep");
    add_common(sweep);
    sweep->add_option("--checkpoints", ckpt_dir, "directory with temporal.ckpt/spatial.ckpt");
    sweep->add_option("--points", grid_points, "grid resolution")->check(CLI::Range(2, 1001));

    auto* grad = app.add_subcommand("gradcheck", "finite-difference gradient verification");
    grad->add_option("--seed", seed, "rng seed");
    grad->add_flag("--corrupt", corrupt, "perturb one gradient entry (negative control)");

    auto* gen = app.add_subcommand("generate-synthetic", "expand a synthetic manifest");
    gen->add_option("--spec", manifest, "synthetic manifest (json)")->required();
    gen->add_option("--out", out_path, "output jsonl path")->required();

    auto* ser = app.add_subcommand("serialize", "print a joint order");
    ser->add_option("--dataset", dataset_path, "jsonl dataset")->required();
    ser->add_option("--kind", kind, "chain or traversal");

    auto* aug = app.add_subcommand("augment-preview", "sample one transform and show frame 0");
    aug->add_option("--dataset", dataset_path, "jsonl dataset")->required();
    aug->add_option("--seed", seed, "rng seed");
    aug->add_flag("--rotation,!--no-rotation", aug_rot, "enable rotation");
    aug->add_flag("--scaling", aug_scale, "enable scaling");
    aug->add_flag("--shear", aug_shear, "enable shear");

    CLI11_PARSE(app, argc, argv);

    try {
        if (train->parsed())
            return cmd_train(load_config(config_path, seed_flag, out_flag, deterministic));
        if (eval->parsed()) {
            auto cfg = load_config(config_path, seed_flag, out_flag, deterministic);
            return cmd_eval(cfg, ckpt_dir.empty() ? cfg.out_dir : ckpt_dir);
        }
        if (sweep->parsed()) {
            auto cfg = load_config(config_path, seed_flag, out_flag, deterministic);
            return cmd_sweep_lambda(cfg, ckpt_dir.empty() ? cfg.out_dir : ckpt_dir, grid_points);
        }
        if (grad->parsed()) return cmd_gradcheck(seed, corrupt);
        if (gen->parsed()) return cmd_generate(manifest, out_path);
        if (ser->parsed()) return cmd_serialize(dataset_path, kind);
        if (aug->parsed())
            return cmd_augment_preview(dataset_path, seed, aug_rot, aug_scale, aug_shear);
    } catch (const tsrnn::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const tsrnn::InvalidInputError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const tsrnn::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const tsrnn::NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
