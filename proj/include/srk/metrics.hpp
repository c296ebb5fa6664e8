#pragma once

#include <cstdint>
#include <vector>

#include "srk/bvh.hpp"
#include "srk/mesh.hpp"

namespace srk {

// Exact minimum Euclidean distance from p to the mesh surface.
double point_mesh_distance(const Vec3& p, const MeshBvh& bvh);

// Distances for a batch of query points, parallel over points.
std::vector<double> point_mesh_distances(const std::vector<Vec3>& points, const MeshBvh& bvh);

// Point Coverage Ratio: fraction of points strictly closer than omega to the
// mesh surface. Throws InvalidInput on an empty point set or empty mesh.
double pcr(const std::vector<Vec3>& points, const MeshBvh& bvh, double omega);
double pcr(const std::vector<Vec3>& points, const TriMesh& mesh, double omega);

// n surface points, triangles chosen with probability proportional to area,
// uniform barycentric placement, deterministic for a fixed seed.
std::vector<Vec3> sample_surface(const TriMesh& mesh, size_t n, uint64_t seed);

// Symmetric Chamfer distance between n-point surface samples of the two
// meshes, unsquared-distance mean in both directions with exact nearest
// neighbors. Each mesh's sample seed is derived from (seed, mesh content), so
// swapping the arguments gives the identical value.
double chamfer(const TriMesh& a, const TriMesh& b, size_t n, uint64_t seed);

// Voxel IoU on one shared grid anchored at the joint bounding box min corner.
// A voxel is occupied iff its center is inside the mesh (ray parity) or the
// surface intersects the voxel. 0 when the union is empty.
double voxel_iou(const TriMesh& a, const TriMesh& b, double voxel);

struct LfdConfig {
    int image_size = 128;   // >= 32
    int zernike_order = 8;  // max Zernike order per silhouette
};

// Multi-view silhouette dissimilarity: each mesh is normalized to its
// bounding sphere, rasterized orthographically from the 20 dodecahedron
// vertex directions, and every view reduced to rotation-invariant Zernike
// moment magnitudes. The distance is the minimum over the 60 rotations of the
// icosahedral group (acting as view permutations) of the mean L1 descriptor
// distance. Zero for identical meshes; symmetric.
double lightfield_distance(const TriMesh& a, const TriMesh& b, const LfdConfig& cfg = {});

// Per-view descriptors (20 x moment count), exposed for tests.
std::vector<std::vector<double>> lightfield_descriptor(const TriMesh& mesh,
                                                       const LfdConfig& cfg = {});

// Triangle/axis-aligned-box overlap (separating axis test), exposed for the
// voxelizer and its tests.
bool triangle_box_overlap(const Vec3& box_center, const Vec3& box_half, const Vec3& a,
                          const Vec3& b, const Vec3& c);

} // namespace srk
