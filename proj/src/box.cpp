#include "srk/box.hpp"

#include <cmath>

#include "srk/error.hpp"

namespace srk {

double wrap_angle(double a) {
    const double two_pi = 2.0 * 3.14159265358979323846;
    double w = a - two_pi * std::floor((a + 3.14159265358979323846) / two_pi);
    // floor rounding can leave w == pi for inputs just below an odd multiple of pi
    if (w >= 3.14159265358979323846) w -= two_pi;
    return w;
}

OrientedBox7DoF compose_box(const OrientedBox7DoF& initial, const BoxResidual& residual,
                            double min_scale) {
    if (!initial.valid()) throw InvalidInput("compose_box: invalid initial box");
    if (!residual.finite()) throw InvalidInput("compose_box: non-finite residual");
    OrientedBox7DoF out;
    out.center = initial.center + residual.d_center;
    out.z_rotation = wrap_angle(initial.z_rotation + residual.d_rotation);
    out.scale = initial.scale + residual.d_scale;
    for (int i = 0; i < 3; ++i)
        if (out.scale[i] < min_scale) out.scale[i] = min_scale;
    return out;
}

std::array<Vec3, 8> box_corners(const OrientedBox7DoF& box) {
    if (!box.valid()) throw InvalidInput("box_corners: invalid box");
    std::array<Vec3, 8> corners;
    Vec3 h = box.scale * 0.5;
    for (int i = 0; i < 8; ++i) {
        Vec3 local{(i & 1) ? h.x : -h.x, (i & 2) ? h.y : -h.y, (i & 4) ? h.z : -h.z};
        corners[i] = box.center + rotate_z(local, box.z_rotation);
    }
    return corners;
}

} // namespace srk
