#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srk/vec3.hpp"

namespace srk {

// Indexed triangle mesh. `category` is the reconstruction category name when
// known, empty otherwise; mesh files do not persist it.
struct TriMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<uint32_t, 3>> triangles;
    std::string category;

    bool empty() const { return triangles.empty(); }

    // Checks index bounds and rejects degenerate triangles with repeated
    // vertex indices. Throws InvalidInput naming the bad triangle.
    void validate() const;

    Aabb bounds() const;
    double area() const;   // total surface area
    double volume() const; // signed, divergence theorem; needs outward winding
};

Vec3 triangle_normal(const TriMesh& m, size_t t); // unnormalized (2x area vector)
double triangle_area(const TriMesh& m, size_t t);

// Vertices mapped through an affine map p -> basis * p + origin expressed as
// three column vectors; connectivity untouched.
TriMesh transform_mesh(const TriMesh& m, const Vec3& col_x, const Vec3& col_y, const Vec3& col_z,
                       const Vec3& origin);

// Content hash over vertex/triangle bytes, used to derive per-mesh sampling
// sub-seeds so symmetric metrics stay symmetric.
uint64_t mesh_content_hash(const TriMesh& m);

// Merge vertices closer than `tol` (used by watertightness checks).
TriMesh weld_vertices(const TriMesh& m, double tol);

} // namespace srk
