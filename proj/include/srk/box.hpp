#pragma once

#include <array>

#include "srk/vec3.hpp"

namespace srk {

// Minimum box extent in meters; residual application clamps here instead of
// producing a degenerate or inverted box.
inline constexpr double kMinBoxScale = 1e-4;

// Wrap an angle into [-pi, pi).
double wrap_angle(double a);

// 7-DoF oriented bounding box: center, rotation about +z, per-axis extents.
struct OrientedBox7DoF {
    Vec3 center;
    double z_rotation = 0.0;
    Vec3 scale{1.0, 1.0, 1.0};

    bool valid() const {
        return is_finite(center) && std::isfinite(z_rotation) && is_finite(scale) &&
               scale.x > 0.0 && scale.y > 0.0 && scale.z > 0.0;
    }
};

struct BoxResidual {
    Vec3 d_center;
    double d_rotation = 0.0;
    Vec3 d_scale;

    bool finite() const {
        return is_finite(d_center) && std::isfinite(d_rotation) && is_finite(d_scale);
    }
};

// Componentwise refinement: center/scale added, rotation added then wrapped
// into [-pi, pi), scale floored at min_scale. Throws InvalidInput on a
// non-finite residual or invalid initial box.
OrientedBox7DoF compose_box(const OrientedBox7DoF& initial, const BoxResidual& residual,
                            double min_scale = kMinBoxScale);

// The 8 box corners in a fixed order: z varies slowest, then y, then x, each
// from the negative to the positive half-extent. Corner i is at local offset
//   ((i & 1) ? +sx/2 : -sx/2, (i & 2) ? +sy/2 : -sy/2, (i & 4) ? +sz/2 : -sz/2)
// rotated by z_rotation about the center.
std::array<Vec3, 8> box_corners(const OrientedBox7DoF& box);

} // namespace srk
