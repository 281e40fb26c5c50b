#include "tsrnn/augment.hpp"

#include <cmath>

namespace tsrnn {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw InvalidInputError(std::string("non-finite ") + what);
}

}  // namespace

void AugmentConfig::validate() const {
    auto check = [](const Interval& r, double neutral, const char* what) {
        if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi)
            throw ConfigError(std::string("invalid interval for ") + what);
        if (!r.contains(neutral))
            throw ConfigError(std::string(what) + " range must contain its neutral value");
    };
    check(rot_range_x, 0.0, "rotation-x");
    check(rot_range_y, 0.0, "rotation-y");
    check(rot_range_z, 0.0, "rotation-z");
    check(scale_range, 1.0, "scale");
    check(shear_range, 0.0, "shear");
}

Transform3 rot_x(double alpha) {
    require_finite(alpha, "angle");
    const double c = std::cos(alpha), s = std::sin(alpha);
    Transform3 t;
    t.matrix << 1, 0, 0,
                0, c, -s,
                0, s, c;
    return t;
}

Transform3 rot_y(double beta) {
    require_finite(beta, "angle");
    const double c = std::cos(beta), s = std::sin(beta);
    Transform3 t;
    t.matrix << c, 0, s,
                0, 1, 0,
               -s, 0, c;
    return t;
}

Transform3 rot_z(double gamma) {
    require_finite(gamma, "angle");
    const double c = std::cos(gamma), s = std::sin(gamma);
    Transform3 t;
    t.matrix << c, -s, 0,
                s, c, 0,
                0, 0, 1;
    return t;
}

Transform3 compose_rotation(double alpha, double beta, double gamma) {
    Transform3 t;
    t.matrix = rot_z(gamma).matrix * rot_y(beta).matrix * rot_x(alpha).matrix;
    return t;
}

Transform3 scaling(double sx, double sy, double sz) {
    require_finite(sx, "scale factor");
    require_finite(sy, "scale factor");
    require_finite(sz, "scale factor");
    if (sx == 0.0 || sy == 0.0 || sz == 0.0)
        throw InvalidInputError("zero scale factor would degenerate the skeleton");
    Transform3 t;
    t.matrix = Vec3(sx, sy, sz).asDiagonal();
    return t;
}

Transform3 shear(double xy, double xz, double yx, double yz, double zx, double zy) {
    for (double v : {xy, xz, yx, yz, zx, zy}) require_finite(v, "shear factor");
    Transform3 t;
    t.matrix << 1, xy, xz,
                yx, 1, yz,
                zx, zy, 1;
    return t;
}

Transform3 sample_transform(const AugmentConfig& cfg, std::mt19937& rng) {
    cfg.validate();
    auto draw = [&rng](const Interval& r) {
        if (r.lo == r.hi) return r.lo;
        return std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
    };

    Transform3 t;
    if (cfg.rotation_enabled) {
        const double a = draw(cfg.rot_range_x);
        const double b = draw(cfg.rot_range_y);
        const double g = draw(cfg.rot_range_z);
        t.matrix = compose_rotation(a, b, g).matrix * t.matrix;
    }
    if (cfg.scaling_enabled) {
        const double sx = draw(cfg.scale_range);
        const double sy = draw(cfg.scale_range);
        const double sz = draw(cfg.scale_range);
        t.matrix = scaling(sx, sy, sz).matrix * t.matrix;
    }
    if (cfg.shear_enabled) {
        const double xy = draw(cfg.shear_range), xz = draw(cfg.shear_range);
        const double yx = draw(cfg.shear_range), yz = draw(cfg.shear_range);
        const double zx = draw(cfg.shear_range), zy = draw(cfg.shear_range);
        t.matrix = shear(xy, xz, yx, yz, zx, zy).matrix * t.matrix;
    }
    return t;
}

SkeletonSequence apply_transform(const SkeletonSequence& seq, const Transform3& t) {
    SkeletonSequence out = seq;
    const int halves = seq.dims / 3;
    for (int tframe = 0; tframe < seq.valid_length; ++tframe)
        for (int j = 0; j < seq.joint_count; ++j)
            for (int h = 0; h < halves; ++h) {
                const int base = seq.col(j) + 3 * h;
                Vec3 p = seq.frames.block<1, 3>(tframe, base).transpose();
                out.frames.block<1, 3>(tframe, base) = (t.matrix * p).transpose();
            }
    return out;
}

}  // namespace tsrnn
