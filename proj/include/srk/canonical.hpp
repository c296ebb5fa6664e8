#pragma once

#include <string>
#include <utility>
#include <vector>

#include "srk/box.hpp"
#include "srk/mesh.hpp"

namespace srk {

// Canonical frame conventions. UnitMinCorner puts the box's min corner at the
// origin so box-tight points span [0, 1] per axis; Centered keeps the box
// center at the origin, spanning [-0.5, 0.5]. Decoder and pool files declare
// which one their geometry uses.
enum class Frame { UnitMinCorner, Centered };

Frame frame_from_string(const std::string& s); // "unit" | "centered"
const char* frame_to_string(Frame f);

// Captures the world -> canonical map of one box: translate by -center,
// rotate by -z_rotation, scale by 1/s per axis, then the frame's origin
// shift.
struct CanonicalTransform {
    Vec3 translation;   // -center
    double z_rotation;  // -box rotation
    Vec3 inv_scale;     // componentwise 1/scale
    Frame frame = Frame::UnitMinCorner;

    Vec3 apply(const Vec3& p) const;
    Vec3 apply_inverse(const Vec3& q) const;
};

CanonicalTransform canonical_transform(const OrientedBox7DoF& box,
                                       Frame frame = Frame::UnitMinCorner);

// Maps points into the box's canonical frame. Throws InvalidInput on an
// invalid box; an empty point array yields an empty output and a valid
// transform.
std::pair<std::vector<Vec3>, CanonicalTransform>
canonicalize(const std::vector<Vec3>& points, const OrientedBox7DoF& box,
             Frame frame = Frame::UnitMinCorner);

// Places a canonical-frame mesh into world coordinates with the given box
// (exact inverse of canonicalize). Throws InvalidInput on non-positive scale.
TriMesh place_mesh(const TriMesh& mesh, const OrientedBox7DoF& box,
                   Frame frame = Frame::UnitMinCorner);

} // namespace srk
