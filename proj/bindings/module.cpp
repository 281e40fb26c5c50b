#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tsrnn/pipeline.hpp"
#include "tsrnn/preprocess.hpp"
#include "tsrnn/synthetic.hpp"

namespace py = pybind11;
using namespace tsrnn;

PYBIND11_MODULE(_tsrnn, m) {
    m.doc() = "Two-stream recurrent skeleton action recognition core";

    py::register_exception<InvalidInputError>(m, "InvalidInputError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_RuntimeError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    py::class_<SkeletonGraph>(m, "SkeletonGraph")
        .def(py::init<>())
        .def_readwrite("joint_count", &SkeletonGraph::joint_count)
        .def_readwrite("joint_names", &SkeletonGraph::joint_names)
        .def_readwrite("edges", &SkeletonGraph::edges)
        .def_readwrite("root_joint", &SkeletonGraph::root_joint)
        .def_readwrite("center_joints", &SkeletonGraph::center_joints)
        .def_property(
            "parts",
            [](const SkeletonGraph& g) {
                std::vector<std::vector<int>> v(g.parts.begin(), g.parts.end());
                return v;
            },
            [](SkeletonGraph& g, const std::vector<std::vector<int>>& v) {
                if (v.size() != kPartCount) throw ConfigError("parts must have 5 entries");
                std::copy(v.begin(), v.end(), g.parts.begin());
            })
        .def("validate", &SkeletonGraph::validate);

    py::class_<SkeletonSequence>(m, "SkeletonSequence")
        .def(py::init<>())
        .def_readwrite("frames", &SkeletonSequence::frames)
        .def_readwrite("joint_count", &SkeletonSequence::joint_count)
        .def_readwrite("dims", &SkeletonSequence::dims)
        .def_readwrite("valid_length", &SkeletonSequence::valid_length)
        .def_readwrite("label", &SkeletonSequence::label)
        .def_readwrite("subject_id", &SkeletonSequence::subject_id)
        .def_readwrite("view_id", &SkeletonSequence::view_id)
        .def("validate", &SkeletonSequence::validate);

    py::class_<Dataset>(m, "Dataset")
        .def(py::init<>())
        .def_readwrite("graph", &Dataset::graph)
        .def_readwrite("sequences", &Dataset::sequences)
        .def_readwrite("class_count", &Dataset::class_count)
        .def_readwrite("class_names", &Dataset::class_names)
        .def("validate", &Dataset::validate);

    m.def("load_dataset",
          [](const std::string& path, const std::string& format) {
              return load_dataset(path, parse_format(format));
          },
          py::arg("path"), py::arg("format") = "jsonl");
    m.def("save_dataset", &save_dataset);

    m.def("normalize_center", &normalize_center);
    m.def("resample_to_length", &resample_to_length);
    m.def("concat_two_person", &concat_two_person);

    py::class_<JointOrder>(m, "JointOrder")
        .def_readonly("order", &JointOrder::order)
        .def_property_readonly("kind", [](const JointOrder& o) {
            return o.kind == OrderKind::Chain ? "chain" : "traversal";
        });
    m.def("chain_order", &chain_order);
    m.def("traversal_order", &traversal_order);
    m.def("build_spatial_input",
          [](const SkeletonSequence& seq, const JointOrder& order, int tau, int center) {
              return build_spatial_input(seq, order, tau, center).steps;
          });
    m.def("spatial_centers",
          [](int T, int tau, const std::string& mode, unsigned seed) {
              return spatial_centers(
                  T, tau, mode == "train-random" ? CenterMode::TrainRandom : CenterMode::EvalGrid,
                  seed);
          },
          py::arg("T"), py::arg("tau"), py::arg("mode") = "eval-grid", py::arg("seed") = 0);

    m.def("rot_x", [](double a) { return rot_x(a).matrix; });
    m.def("rot_y", [](double b) { return rot_y(b).matrix; });
    m.def("rot_z", [](double g) { return rot_z(g).matrix; });
    m.def("compose_rotation",
          [](double a, double b, double g) { return compose_rotation(a, b, g).matrix; });
    m.def("scaling", [](double x, double y, double z) { return scaling(x, y, z).matrix; });
    m.def("shear", [](double xy, double xz, double yx, double yz, double zx, double zy) {
        return shear(xy, xz, yx, yz, zx, zy).matrix;
    });
    m.def("apply_transform", [](const SkeletonSequence& seq, const Mat3& matrix) {
        Transform3 t;
        t.matrix = matrix;
        return apply_transform(seq, t);
    });
    m.def("sample_transform",
          [](bool rotation, bool scaling_on, bool shear_on, unsigned seed) {
              AugmentConfig cfg;
              cfg.rotation_enabled = rotation;
              cfg.scaling_enabled = scaling_on;
              cfg.shear_enabled = shear_on;
              std::mt19937 rng(seed);
              return sample_transform(cfg, rng).matrix;
          },
          py::arg("rotation") = true, py::arg("scaling") = false, py::arg("shear") = false,
          py::arg("seed") = 0);

    py::class_<NetworkSpec>(m, "NetworkSpec")
        .def(py::init<>())
        .def_property(
            "variant", [](const NetworkSpec& s) { return variant_name(s.variant); },
            [](NetworkSpec& s, const std::string& v) { s.variant = parse_variant(v); })
        .def_readwrite("layer_widths", &NetworkSpec::layer_widths)
        .def_readwrite("part_widths", &NetworkSpec::part_widths)
        .def_readwrite("input_dim", &NetworkSpec::input_dim)
        .def_readwrite("class_count", &NetworkSpec::class_count)
        .def_readwrite("part_input_dims", &NetworkSpec::part_input_dims)
        .def("validate", &NetworkSpec::validate);

    py::class_<NetworkParams>(m, "NetworkParams");
    m.def("init_params", &init_params);
    m.def("parameter_count", &parameter_count);
    m.def("forward",
          [](const NetworkSpec& spec, const NetworkParams& params, const Mat& inputs,
             int valid_length, const SkeletonGraph* graph) {
              return forward(spec, params, inputs, valid_length, graph).probs;
          },
          py::arg("spec"), py::arg("params"), py::arg("inputs"), py::arg("valid_length"),
          py::arg("graph") = nullptr);
    m.def("cross_entropy", [](const Vec& probs, int label) {
        ClassPosterior p{probs};
        return cross_entropy(p, label);
    });

    m.def("fuse", [](const Vec& t, const Vec& s, double lam) {
        return fuse(ClassPosterior{t}, ClassPosterior{s}, lam).probs;
    });
    m.def("average_posteriors", [](const std::vector<Vec>& posts) {
        std::vector<ClassPosterior> ps;
        for (const auto& p : posts) ps.push_back({p});
        return average_posteriors(ps).probs;
    });
    m.def("predict", [](const Vec& probs) { return predict(ClassPosterior{probs}); });

    py::class_<EvalReport>(m, "EvalReport")
        .def_readonly("accuracy", &EvalReport::accuracy)
        .def_readonly("per_class_accuracy", &EvalReport::per_class_accuracy)
        .def_readonly("confusion", &EvalReport::confusion)
        .def_readonly("precision", &EvalReport::precision)
        .def_readonly("recall", &EvalReport::recall)
        .def_readonly("f1", &EvalReport::f1)
        .def_readonly("macro_precision", &EvalReport::macro_precision)
        .def_readonly("macro_recall", &EvalReport::macro_recall)
        .def_readonly("macro_f1", &EvalReport::macro_f1);
    m.def("evaluate", &evaluate);

    m.def("generate_synthetic", [](py::kwargs kwargs) {
        SyntheticSpec spec;
        auto get = [&](const char* key, auto& field) {
            if (kwargs.contains(key))
                field = kwargs[key].cast<std::decay_t<decltype(field)>>();
        };
        get("class_count", spec.class_count);
        get("joint_count", spec.joint_count);
        get("samples_per_class", spec.samples_per_class);
        get("min_length", spec.min_length);
        get("max_length", spec.max_length);
        get("noise_level", spec.noise_level);
        get("subject_count", spec.subject_count);
        get("view_count", spec.view_count);
        get("view_rotation_deg", spec.view_rotation_deg);
        get("seed", spec.seed);
        return generate_synthetic(spec);
    });
    m.def("make_synthetic_graph", &make_synthetic_graph);

    py::class_<Checkpoint>(m, "Checkpoint")
        .def_readonly("spec", &Checkpoint::spec)
        .def_readonly("seed", &Checkpoint::seed)
        .def_readonly("epoch", &Checkpoint::epoch)
        .def_readonly("params", &Checkpoint::params);
    m.def("load_checkpoint", &load_checkpoint);
    m.def("save_checkpoint", &save_checkpoint);

    m.def("train_and_eval",
          [](const std::string& config_path) {
              RunConfig cfg = load_run_config(config_path);
              PreparedData data = prepare_data(cfg);
              TrainOutput t = train_run(cfg, data);
              EvalOutput e = eval_run(cfg, data, t.temporal, t.spatial);
              py::dict out;
              out["fused_accuracy"] = e.fused_report.accuracy;
              out["temporal_accuracy"] = e.temporal_accuracy;
              out["spatial_accuracy"] = e.spatial_accuracy;
              out["macro_f1"] = e.fused_report.macro_f1;
              return out;
          },
          py::arg("config_path"));
}
