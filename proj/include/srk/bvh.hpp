#pragma once

#include <vector>

#include "srk/mesh.hpp"

namespace srk {

// Closest point on triangle (a, b, c) to p.
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

// Moller-Trumbore. Returns true with the ray parameter t >= 0 when the ray
// origin + t*dir crosses the triangle (edges inclusive).
bool ray_triangle(const Vec3& origin, const Vec3& dir, const Vec3& a, const Vec3& b,
                  const Vec3& c, double& t);

// Axis-aligned BVH over a mesh's triangles, leaves holding at most 4.
// The mesh is copied in; queries are const and safe to run concurrently.
class MeshBvh {
  public:
    explicit MeshBvh(TriMesh mesh); // throws InvalidInput on an empty mesh

    const TriMesh& mesh() const { return mesh_; }
    const Aabb& bounds() const { return nodes_[0].box; }

    // Exact minimum Euclidean distance from p to the surface.
    double closest_distance(const Vec3& p) const;
    Vec3 closest_point(const Vec3& p) const;

    // Number of ray crossings with parameter t > t_min (for parity tests).
    int count_ray_crossings(const Vec3& origin, const Vec3& dir, double t_min = 1e-12) const;

    // True when any triangle intersects origin + t*dir for t in (t_lo, t_hi).
    bool ray_blocked(const Vec3& origin, const Vec3& dir, double t_lo, double t_hi) const;

    // Triangle indices whose bounding box overlaps the query box.
    void collect_overlapping(const Aabb& box, std::vector<uint32_t>& out) const;

  private:
    struct Node {
        Aabb box;
        int32_t left = -1;   // internal: child index; leaf: first triangle slot
        int32_t count = 0;   // leaf triangle count, 0 for internal nodes
        int32_t right = -1;
    };

    int32_t build(std::vector<uint32_t>& items, int32_t begin, int32_t end,
                  const std::vector<Vec3>& centroids, const std::vector<Aabb>& tri_boxes);

    TriMesh mesh_;
    std::vector<Node> nodes_;
    std::vector<uint32_t> order_; // triangle ids grouped by leaf
};

// Point-in-mesh by ray parity: casts one ray along a fixed irrational
// direction and tests for an odd crossing count. Correct for closed surfaces,
// including concatenations that share whole faces; points inside a region
// covered by several overlapping closed shells may misclassify.
bool point_inside_parity(const MeshBvh& bvh, const Vec3& p);

} // namespace srk
