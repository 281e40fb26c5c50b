#include "tsrnn/synthetic.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <random>

#include "tsrnn/augment.hpp"

namespace tsrnn {

using nlohmann::json;

SkeletonGraph make_synthetic_graph(int joint_count) {
    if (joint_count < 9)
        throw ConfigError("synthetic graph needs at least 9 joints (5 parts, trunk of 5)");
    const int limb = std::max(1, joint_count / 5);
    const int trunk = joint_count - 4 * limb;
    if (trunk < 1) throw ConfigError("joint_count too small for a 5-part skeleton");

    SkeletonGraph g;
    g.joint_count = joint_count;
    g.joint_names.resize(joint_count);

    // Trunk chain 0..trunk-1 from hip upward, then four limb chains.
    for (int k = 0; k < trunk; ++k) g.joint_names[k] = "trunk" + std::to_string(k);
    for (int k = 1; k < trunk; ++k) g.edges.emplace_back(k - 1, k);
    g.parts[static_cast<int>(BodyPart::Trunk)].resize(trunk);
    for (int k = 0; k < trunk; ++k) g.parts[static_cast<int>(BodyPart::Trunk)][k] = k;

    const struct {
        BodyPart part;
        const char* prefix;
        int attach;  // trunk joint the limb hangs off
    } limbs[4] = {
        {BodyPart::LeftArm, "larm", trunk - 1},
        {BodyPart::RightArm, "rarm", trunk - 1},
        {BodyPart::LeftLeg, "lleg", 0},
        {BodyPart::RightLeg, "rleg", 0},
    };
    int next = trunk;
    for (const auto& lb : limbs) {
        auto& part = g.parts[static_cast<int>(lb.part)];
        for (int m = 0; m < limb; ++m) {
            g.joint_names[next] = std::string(lb.prefix) + std::to_string(m);
            g.edges.emplace_back(m == 0 ? lb.attach : next - 1, next);
            part.push_back(next);
            ++next;
        }
    }

    g.root_joint = 0;
    // Hip triple when the trunk is long enough, otherwise just the hip.
    g.center_joints = {0};
    if (trunk >= 3) g.center_joints = {0, 1, 2};
    g.validate();
    return g;
}

namespace {

// Rest pose: trunk up the y axis, arms out along x at shoulder height, legs down.
Mat rest_pose(const SkeletonGraph& g) {
    const int trunk = static_cast<int>(g.parts[static_cast<int>(BodyPart::Trunk)].size());
    Mat pose(g.joint_count, 3);
    for (int k = 0; k < trunk; ++k) pose.row(k) << 0.0, 0.3 * k, 0.0;
    const double shoulder_y = 0.3 * (trunk - 1);
    auto limb_pose = [&](BodyPart p, double dx, double dy, double y0) {
        const auto& joints = g.parts[static_cast<int>(p)];
        for (size_t m = 0; m < joints.size(); ++m)
            pose.row(joints[m]) << dx * static_cast<double>(m + 1), y0 + dy * static_cast<double>(m + 1), 0.0;
    };
    limb_pose(BodyPart::LeftArm, -0.22, 0.0, shoulder_y);
    limb_pose(BodyPart::RightArm, 0.22, 0.0, shoulder_y);
    limb_pose(BodyPart::LeftLeg, -0.05, -0.3, 0.0);
    limb_pose(BodyPart::RightLeg, 0.05, -0.3, 0.0);
    return pose;
}

}  // namespace

Dataset generate_synthetic(const SyntheticSpec& spec) {
    if (spec.class_count < 2) throw ConfigError("synthetic spec needs at least 2 classes");
    if (spec.samples_per_class < 1) throw ConfigError("samples_per_class must be >= 1");
    if (spec.min_length < 2 || spec.max_length < spec.min_length)
        throw ConfigError("invalid synthetic length range");
    if (spec.noise_level < 0) throw ConfigError("noise level must be >= 0");
    if (spec.subject_count < 1 || spec.view_count < 1)
        throw ConfigError("subject and view counts must be >= 1");

    Dataset ds;
    ds.graph = make_synthetic_graph(spec.joint_count);
    ds.class_count = spec.class_count;
    for (int c = 0; c < spec.class_count; ++c) ds.class_names.push_back("action" + std::to_string(c));

    const Mat pose = rest_pose(ds.graph);
    const BodyPart moving[4] = {BodyPart::LeftArm, BodyPart::RightArm, BodyPart::LeftLeg,
                                BodyPart::RightLeg};
    std::mt19937 rng(spec.seed);
    std::uniform_int_distribution<int> len_dist(spec.min_length, spec.max_length);
    std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * M_PI);
    std::normal_distribution<double> noise(0.0, 1.0);

    int sample_index = 0;
    for (int c = 0; c < spec.class_count; ++c) {
        // Distinct template per class: which limb moves, how fast, which axis mix.
        const auto& joints = ds.graph.parts[static_cast<int>(moving[c % 4])];
        const double freq = 0.08 + 0.06 * static_cast<double>(c / 4 + 1) + 0.02 * (c % 4);
        const double axis_mix = (c % 2 == 0) ? 1.0 : -1.0;
        // Static posture signature: the active limb is held raised by a
        // class-dependent amount, so the class is visible in any single frame
        // as well as in the motion.
        const double lift = 0.10 + 0.08 * static_cast<double>(c % 4) + 0.18 * static_cast<double>(c / 4);
        for (int s = 0; s < spec.samples_per_class; ++s, ++sample_index) {
            SkeletonSequence seq;
            seq.joint_count = spec.joint_count;
            seq.dims = 3;
            seq.label = c;
            seq.subject_id = sample_index % spec.subject_count;
            seq.view_id = sample_index % spec.view_count;
            const int T = len_dist(rng);
            seq.valid_length = T;
            seq.frames = Mat::Zero(T, static_cast<Eigen::Index>(spec.joint_count) * 3);

            const double phase = phase_dist(rng);
            const double subj_scale = 0.9 + 0.05 * static_cast<double>(seq.subject_id);
            const Mat3 view_rot =
                rot_y(seq.view_id * spec.view_rotation_deg * M_PI / 180.0).matrix;

            for (int t = 0; t < T; ++t) {
                Mat frame = pose;
                for (size_t m = 0; m < joints.size(); ++m) {
                    const double reach = static_cast<double>(m + 1) / static_cast<double>(joints.size());
                    const double swing = 0.35 * reach * std::sin(2.0 * M_PI * freq * t + phase);
                    frame(joints[m], 2) += swing;                               // out of plane
                    frame(joints[m], 1) += lift * reach + 0.5 * axis_mix * swing;  // up/down
                }
                for (int j = 0; j < spec.joint_count; ++j) {
                    Vec3 p = view_rot * (subj_scale * frame.row(j).transpose());
                    for (int d = 0; d < 3; ++d)
                        seq.frames(t, j * 3 + d) = p[d] + spec.noise_level * noise(rng);
                }
            }
            ds.sequences.push_back(std::move(seq));
        }
    }
    ds.validate();
    return ds;
}

SyntheticSpec synthetic_spec_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open synthetic manifest: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError(std::string("bad synthetic manifest: ") + e.what());
    }
    SyntheticSpec d;
    SyntheticSpec s;
    s.class_count = j.value("class_count", d.class_count);
    s.joint_count = j.value("joint_count", d.joint_count);
    s.samples_per_class = j.value("samples_per_class", d.samples_per_class);
    s.min_length = j.value("min_length", d.min_length);
    s.max_length = j.value("max_length", d.max_length);
    s.noise_level = j.value("noise_level", d.noise_level);
    s.subject_count = j.value("subject_count", d.subject_count);
    s.view_count = j.value("view_count", d.view_count);
    s.view_rotation_deg = j.value("view_rotation_deg", d.view_rotation_deg);
    s.seed = j.value("seed", d.seed);
    return s;
}

}  // namespace tsrnn
