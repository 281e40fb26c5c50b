#pragma once

#include <random>

#include "tsrnn/skeleton.hpp"

namespace tsrnn {

struct Transform3 {
    Mat3 matrix = Mat3::Identity();
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double v) const { return lo <= v && v <= hi; }
};

// Sampling ranges for the random 3D transform. Defaults follow the camera
// geometry: rotation about x and y only, mild scaling and shear.
struct AugmentConfig {
    bool rotation_enabled = true;
    bool scaling_enabled = false;
    bool shear_enabled = false;
    Interval rot_range_x{-M_PI / 6, M_PI / 6};
    Interval rot_range_y{-M_PI / 6, M_PI / 6};
    Interval rot_range_z{0.0, 0.0};
    Interval scale_range{0.9, 1.1};   // per axis
    Interval shear_range{-0.1, 0.1};  // per factor
    unsigned seed = 0;

    void validate() const;
    bool any_enabled() const { return rotation_enabled || scaling_enabled || shear_enabled; }
};

// Basic counterclockwise rotations about each axis.
Transform3 rot_x(double alpha);
Transform3 rot_y(double beta);
Transform3 rot_z(double gamma);

// R = Rz(gamma) * Ry(beta) * Rx(alpha).
Transform3 compose_rotation(double alpha, double beta, double gamma);

Transform3 scaling(double sx, double sy, double sz);

// Unit-diagonal shear; arguments are sh_x^y, sh_x^z, sh_y^x, sh_y^z, sh_z^x, sh_z^y,
// placed row-major off the diagonal.
Transform3 shear(double xy, double xz, double yx, double yz, double zx, double zy);

// Draw enabled parameters uniformly from their ranges and compose as
// shear * scaling * rotation (rotation applied first).
Transform3 sample_transform(const AugmentConfig& cfg, std::mt19937& rng);

// Left-multiply every valid frame's joint coordinates; 6D sequences transform
// both 3-coordinate halves independently.
SkeletonSequence apply_transform(const SkeletonSequence& seq, const Transform3& t);

}  // namespace tsrnn
