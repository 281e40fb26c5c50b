#include "tsrnn/preprocess.hpp"

namespace tsrnn {

SkeletonSequence normalize_center(const SkeletonSequence& seq, const SkeletonGraph& graph) {
    if (seq.dims != 3)
        throw InvalidInputError("normalize_center expects 3D coordinates");
    if (graph.center_joints.empty())
        throw ConfigError("graph defines no center joints");
    seq.validate();

    SkeletonSequence out = seq;
    const double inv_n = 1.0 / static_cast<double>(graph.center_joints.size());
    for (int t = 0; t < seq.valid_length; ++t) {
        Vec3 center = Vec3::Zero();
        for (int c : graph.center_joints)
            center += seq.frames.block<1, 3>(t, seq.col(c)).transpose();
        center *= inv_n;
        for (int j = 0; j < seq.joint_count; ++j)
            out.frames.block<1, 3>(t, seq.col(j)) -= center.transpose();
    }
    return out;
}

SkeletonSequence resample_to_length(const SkeletonSequence& seq, int target_T) {
    if (target_T < 1) throw InvalidInputError("target length must be >= 1");
    seq.validate();

    SkeletonSequence out = seq;
    out.frames = Mat::Zero(target_T, seq.frames.cols());
    const int L = seq.valid_length;
    if (L > target_T) {
        for (int i = 0; i < target_T; ++i) {
            int src = static_cast<int>((static_cast<long long>(i) * L) / target_T);
            out.frames.row(i) = seq.frames.row(src);
        }
        out.valid_length = target_T;
    } else {
        out.frames.topRows(L) = seq.frames.topRows(L);
        out.valid_length = L;
    }
    return out;
}

SkeletonSequence concat_two_person(const SkeletonSequence& a, const SkeletonSequence& b) {
    if (a.dims != 3 || b.dims != 3)
        throw InvalidInputError("two-person concat expects two 3D sequences");
    if (a.joint_count != b.joint_count || a.total_length() != b.total_length() ||
        a.valid_length != b.valid_length)
        throw InvalidInputError("two-person concat: shape mismatch");
    if (a.label != b.label)
        throw InvalidInputError("two-person concat: label mismatch");

    SkeletonSequence out = a;
    out.dims = 6;
    out.frames = Mat::Zero(a.total_length(), static_cast<Eigen::Index>(a.joint_count) * 6);
    for (int j = 0; j < a.joint_count; ++j) {
        out.frames.middleCols(j * 6, 3) = a.frames.middleCols(j * 3, 3);
        out.frames.middleCols(j * 6 + 3, 3) = b.frames.middleCols(j * 3, 3);
    }
    return out;
}

}  // namespace tsrnn
