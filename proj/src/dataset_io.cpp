#include "tsrnn/dataset_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "tsrnn/synthetic.hpp"

namespace tsrnn {

using nlohmann::json;

DatasetFormat parse_format(const std::string& name) {
    if (name == "jsonl") return DatasetFormat::Jsonl;
    if (name == "synthetic-manifest") return DatasetFormat::SyntheticManifest;
    throw ConfigError("unknown dataset format: " + name);
}

namespace {

SkeletonGraph graph_from_json(const json& g) {
    SkeletonGraph graph;
    graph.joint_names = g.at("joints").get<std::vector<std::string>>();
    graph.joint_count = static_cast<int>(graph.joint_names.size());
    for (const auto& e : g.at("edges"))
        graph.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    const auto& parts = g.at("parts");
    for (int p = 0; p < kPartCount; ++p) {
        const std::string key = part_name(static_cast<BodyPart>(p));
        if (!parts.contains(key)) throw DataError("graph parts missing \"" + key + "\"");
        graph.parts[p] = parts.at(key).get<std::vector<int>>();
    }
    graph.root_joint = g.at("root").get<int>();
    graph.center_joints = g.at("centers").get<std::vector<int>>();
    return graph;
}

json graph_to_json(const SkeletonGraph& graph) {
    json parts = json::object();
    for (int p = 0; p < kPartCount; ++p)
        parts[part_name(static_cast<BodyPart>(p))] = graph.parts[p];
    json edges = json::array();
    for (const auto& [u, v] : graph.edges) edges.push_back({u, v});
    return {{"joints", graph.joint_names},
            {"edges", edges},
            {"parts", parts},
            {"root", graph.root_joint},
            {"centers", graph.center_joints}};
}

SkeletonSequence sequence_from_json(const json& rec, int joint_count, size_t record_no) {
    auto fail = [&](const std::string& what) {
        throw DataError("record " + std::to_string(record_no) + ": " + what);
    };
    SkeletonSequence seq;
    seq.label = rec.at("label").get<int>();
    seq.subject_id = rec.value("subject", 0);
    seq.view_id = rec.value("view", 0);
    seq.joint_count = joint_count;

    const auto& frames = rec.at("frames");
    if (frames.empty()) fail("empty frame list");
    const auto& first_joint = frames.at(0).at(0);
    seq.dims = static_cast<int>(first_joint.size());
    if (seq.dims != 3 && seq.dims != 6) fail("coordinates must have 3 or 6 components");

    const int T = static_cast<int>(frames.size());
    seq.frames = Mat::Zero(T, static_cast<Eigen::Index>(joint_count) * seq.dims);
    seq.valid_length = T;
    for (int t = 0; t < T; ++t) {
        const auto& frame = frames.at(t);
        if (static_cast<int>(frame.size()) != joint_count) fail("joint count mismatch");
        for (int j = 0; j < joint_count; ++j) {
            const auto& coord = frame.at(j);
            if (static_cast<int>(coord.size()) != seq.dims) fail("inconsistent coordinate arity");
            for (int d = 0; d < seq.dims; ++d) {
                double v = coord.at(d).get<double>();
                if (!std::isfinite(v)) fail("non-finite coordinate");
                seq.frames(t, seq.col(j) + d) = v;
            }
        }
    }
    return seq;
}

}  // namespace

Dataset load_dataset(const std::string& path, DatasetFormat format) {
    if (format == DatasetFormat::SyntheticManifest)
        return generate_synthetic(synthetic_spec_from_json_file(path));

    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset file: " + path);

    Dataset ds;
    std::string line;
    size_t record_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++record_no;
        if (line.empty()) continue;
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::exception& e) {
            throw DataError("record " + std::to_string(record_no) + ": parse failure: " + e.what());
        }
        try {
            if (!have_header) {
                ds.class_count = rec.at("class_count").get<int>();
                ds.class_names = rec.value("class_names", std::vector<std::string>{});
                ds.graph = graph_from_json(rec.at("graph"));
                ds.graph.validate();
                have_header = true;
                continue;
            }
            SkeletonSequence seq = sequence_from_json(rec, ds.graph.joint_count, record_no);
            if (seq.label < 0 || seq.label >= ds.class_count)
                throw DataError("record " + std::to_string(record_no) + ": label " +
                                std::to_string(seq.label) + " out of range");
            seq.validate();
            ds.sequences.push_back(std::move(seq));
        } catch (const json::exception& e) {
            throw DataError("record " + std::to_string(record_no) + ": " + e.what());
        }
    }
    if (!have_header) throw DataError("dataset has no header record: " + path);
    ds.validate();
    return ds;
}

void save_dataset(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write dataset file: " + path);

    json header = {{"class_count", ds.class_count},
                   {"class_names", ds.class_names},
                   {"graph", graph_to_json(ds.graph)}};
    out << header.dump() << "\n";

    for (const auto& seq : ds.sequences) {
        json frames = json::array();
        for (int t = 0; t < seq.valid_length; ++t) {
            json frame = json::array();
            for (int j = 0; j < seq.joint_count; ++j) {
                json coord = json::array();
                for (int d = 0; d < seq.dims; ++d) coord.push_back(seq.frames(t, seq.col(j) + d));
                frame.push_back(std::move(coord));
            }
            frames.push_back(std::move(frame));
        }
        json rec = {{"label", seq.label},
                    {"subject", seq.subject_id},
                    {"view", seq.view_id},
                    {"frames", std::move(frames)}};
        out << rec.dump() << "\n";
    }
}

}  // namespace tsrnn
