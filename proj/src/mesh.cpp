#include "srk/mesh.hpp"

#include <cmath>
#include <map>
#include <tuple>

#include "srk/error.hpp"
#include "srk/rng.hpp"

namespace srk {

void TriMesh::validate() const {
    for (size_t t = 0; t < triangles.size(); ++t) {
        const auto& tri = triangles[t];
        for (int k = 0; k < 3; ++k)
            if (tri[k] >= vertices.size())
                throw InvalidInput("mesh: triangle " + std::to_string(t) + " index " +
                                   std::to_string(tri[k]) + " out of range");
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
            throw InvalidInput("mesh: triangle " + std::to_string(t) +
                               " repeats a vertex index");
    }
    for (size_t v = 0; v < vertices.size(); ++v)
        if (!is_finite(vertices[v]))
            throw InvalidInput("mesh: vertex " + std::to_string(v) + " is not finite");
}

Aabb TriMesh::bounds() const {
    Aabb b;
    for (const auto& v : vertices) b.expand(v);
    return b;
}

Vec3 triangle_normal(const TriMesh& m, size_t t) {
    const auto& tri = m.triangles[t];
    return cross(m.vertices[tri[1]] - m.vertices[tri[0]], m.vertices[tri[2]] - m.vertices[tri[0]]);
}

double triangle_area(const TriMesh& m, size_t t) { return 0.5 * norm(triangle_normal(m, t)); }

double TriMesh::area() const {
    double a = 0.0;
    for (size_t t = 0; t < triangles.size(); ++t) a += triangle_area(*this, t);
    return a;
}

double TriMesh::volume() const {
    double v = 0.0;
    for (const auto& tri : triangles) {
        const Vec3& a = vertices[tri[0]];
        const Vec3& b = vertices[tri[1]];
        const Vec3& c = vertices[tri[2]];
        v += dot(a, cross(b, c)) / 6.0;
    }
    return v;
}

TriMesh transform_mesh(const TriMesh& m, const Vec3& col_x, const Vec3& col_y, const Vec3& col_z,
                       const Vec3& origin) {
    TriMesh out;
    out.triangles = m.triangles;
    out.category = m.category;
    out.vertices.reserve(m.vertices.size());
    for (const auto& v : m.vertices)
        out.vertices.push_back(origin + col_x * v.x + col_y * v.y + col_z * v.z);
    return out;
}

uint64_t mesh_content_hash(const TriMesh& m) {
    uint64_t h = hash_bytes(m.vertices.data(), m.vertices.size() * sizeof(Vec3));
    h = hash_bytes(m.triangles.data(), m.triangles.size() * sizeof(m.triangles[0]), h);
    return h;
}

TriMesh weld_vertices(const TriMesh& m, double tol) {
    // Quantize onto a tol-grid; exact-duplicate and near-duplicate vertices
    // land in the same cell for the tolerances used by the tests.
    std::map<std::tuple<long long, long long, long long>, uint32_t> cell_to_index;
    std::vector<uint32_t> remap(m.vertices.size());
    TriMesh out;
    out.category = m.category;
    for (size_t i = 0; i < m.vertices.size(); ++i) {
        const Vec3& v = m.vertices[i];
        auto key = std::make_tuple(llround(v.x / tol), llround(v.y / tol), llround(v.z / tol));
        auto it = cell_to_index.find(key);
        if (it == cell_to_index.end()) {
            uint32_t idx = uint32_t(out.vertices.size());
            cell_to_index.emplace(key, idx);
            out.vertices.push_back(v);
            remap[i] = idx;
        } else {
            remap[i] = it->second;
        }
    }
    for (const auto& tri : m.triangles) {
        std::array<uint32_t, 3> t{remap[tri[0]], remap[tri[1]], remap[tri[2]]};
        if (t[0] != t[1] && t[1] != t[2] && t[0] != t[2]) out.triangles.push_back(t);
    }
    return out;
}

} // namespace srk
