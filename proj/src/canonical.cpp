#include "srk/canonical.hpp"

#include "srk/error.hpp"

namespace srk {

Frame frame_from_string(const std::string& s) {
    if (s == "unit") return Frame::UnitMinCorner;
    if (s == "centered") return Frame::Centered;
    throw InvalidInput("unknown canonical frame '" + s + "' (expected unit|centered)");
}

const char* frame_to_string(Frame f) {
    return f == Frame::UnitMinCorner ? "unit" : "centered";
}

Vec3 CanonicalTransform::apply(const Vec3& p) const {
    Vec3 q = cwise_mul(rotate_z(p + translation, z_rotation), inv_scale);
    if (frame == Frame::UnitMinCorner) q += Vec3{0.5, 0.5, 0.5};
    return q;
}

Vec3 CanonicalTransform::apply_inverse(const Vec3& q) const {
    Vec3 p = q;
    if (frame == Frame::UnitMinCorner) p -= Vec3{0.5, 0.5, 0.5};
    p = Vec3{p.x / inv_scale.x, p.y / inv_scale.y, p.z / inv_scale.z};
    return rotate_z(p, -z_rotation) - translation;
}

CanonicalTransform canonical_transform(const OrientedBox7DoF& box, Frame frame) {
    if (!box.valid()) throw InvalidInput("canonical_transform: invalid box");
    CanonicalTransform t;
    t.translation = -box.center;
    t.z_rotation = -box.z_rotation;
    t.inv_scale = Vec3{1.0 / box.scale.x, 1.0 / box.scale.y, 1.0 / box.scale.z};
    t.frame = frame;
    return t;
}

std::pair<std::vector<Vec3>, CanonicalTransform>
canonicalize(const std::vector<Vec3>& points, const OrientedBox7DoF& box, Frame frame) {
    CanonicalTransform t = canonical_transform(box, frame);
    std::vector<Vec3> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(t.apply(p));
    return {std::move(out), t};
}

TriMesh place_mesh(const TriMesh& mesh, const OrientedBox7DoF& box, Frame frame) {
    if (!(box.scale.x > 0.0 && box.scale.y > 0.0 && box.scale.z > 0.0))
        throw InvalidInput("place_mesh: non-positive box scale");
    CanonicalTransform t = canonical_transform(box, frame);
    TriMesh out;
    out.triangles = mesh.triangles;
    out.category = mesh.category;
    out.vertices.reserve(mesh.vertices.size());
    for (const auto& v : mesh.vertices) out.vertices.push_back(t.apply_inverse(v));
    return out;
}

} // namespace srk
