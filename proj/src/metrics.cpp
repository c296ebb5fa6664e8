#include "srk/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "srk/error.hpp"
#include "srk/rng.hpp"

namespace srk {

double point_mesh_distance(const Vec3& p, const MeshBvh& bvh) {
    return bvh.closest_distance(p);
}

std::vector<double> point_mesh_distances(const std::vector<Vec3>& points, const MeshBvh& bvh) {
    std::vector<double> out(points.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < (long long)points.size(); ++i)
        out[i] = bvh.closest_distance(points[i]);
    return out;
}

double pcr(const std::vector<Vec3>& points, const MeshBvh& bvh, double omega) {
    if (points.empty()) throw InvalidInput("pcr: empty point set");
    auto d = point_mesh_distances(points, bvh);
    size_t covered = 0;
    for (double v : d)
        if (v < omega) ++covered;
    return double(covered) / double(points.size());
}

double pcr(const std::vector<Vec3>& points, const TriMesh& mesh, double omega) {
    if (mesh.empty()) throw InvalidInput("pcr: empty mesh");
    MeshBvh bvh(mesh);
    return pcr(points, bvh, omega);
}

std::vector<Vec3> sample_surface(const TriMesh& mesh, size_t n, uint64_t seed) {
    if (mesh.empty()) throw InvalidInput("sample_surface: empty mesh");
    std::vector<double> cumulative(mesh.triangles.size());
    double total = 0.0;
    for (size_t t = 0; t < mesh.triangles.size(); ++t) {
        total += triangle_area(mesh, t);
        cumulative[t] = total;
    }
    if (!(total > 0.0)) throw InvalidInput("sample_surface: zero-area mesh");

    Rng rng(seed);
    std::vector<Vec3> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        double pick = rng.uniform() * total;
        size_t t = size_t(std::lower_bound(cumulative.begin(), cumulative.end(), pick) -
                          cumulative.begin());
        if (t >= mesh.triangles.size()) t = mesh.triangles.size() - 1;
        const auto& tri = mesh.triangles[t];
        // uniform barycentric via the sqrt trick
        double r1 = std::sqrt(rng.uniform());
        double r2 = rng.uniform();
        double wa = 1.0 - r1, wb = r1 * (1.0 - r2), wc = r1 * r2;
        out.push_back(mesh.vertices[tri[0]] * wa + mesh.vertices[tri[1]] * wb +
                      mesh.vertices[tri[2]] * wc);
    }
    return out;
}

namespace {

// Mean over `from` of the exact nearest-neighbor distance into `to`.
// Brute force; distances land in per-point slots so the final serial sum is
// independent of the thread count.
double mean_nn_distance(const std::vector<Vec3>& from, const std::vector<Vec3>& to) {
    std::vector<double> nn(from.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < (long long)from.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : to) best = std::min(best, norm_sq(from[i] - q));
        nn[i] = std::sqrt(best);
    }
    double sum = 0.0;
    for (double v : nn) sum += v;
    return sum / double(from.size());
}

} // namespace

double chamfer(const TriMesh& a, const TriMesh& b, size_t n, uint64_t seed) {
    if (n == 0) throw InvalidInput("chamfer: sample count must be > 0");
    auto pa = sample_surface(a, n, mix_seed(seed, mesh_content_hash(a)));
    auto pb = sample_surface(b, n, mix_seed(seed, mesh_content_hash(b)));
    return mean_nn_distance(pa, pb) + mean_nn_distance(pb, pa);
}

bool triangle_box_overlap(const Vec3& box_center, const Vec3& box_half, const Vec3& a,
                          const Vec3& b, const Vec3& c) {
    // Akenine-Moller separating axis test
    Vec3 v0 = a - box_center, v1 = b - box_center, v2 = c - box_center;
    Vec3 e0 = v1 - v0, e1 = v2 - v1, e2 = v0 - v2;

    auto axis_test = [&](const Vec3& axis) {
        double p0 = dot(v0, axis), p1 = dot(v1, axis), p2 = dot(v2, axis);
        double lo = std::min({p0, p1, p2}), hi = std::max({p0, p1, p2});
        double r = box_half.x * std::fabs(axis.x) + box_half.y * std::fabs(axis.y) +
                   box_half.z * std::fabs(axis.z);
        return lo <= r && hi >= -r;
    };

    const Vec3 axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (const auto& n : axes)
        if (!axis_test(n)) return false;
    for (const auto& e : {e0, e1, e2})
        for (const auto& n : axes)
            if (!axis_test(cross(e, n))) return false;
    return axis_test(cross(e0, e1));
}

namespace {

struct VoxelGrid {
    Vec3 origin;
    double h = 0.0;
    int nx = 0, ny = 0, nz = 0;
    std::vector<uint8_t> occupied;

    size_t index(int i, int j, int k) const {
        return (size_t(k) * ny + size_t(j)) * nx + size_t(i);
    }
};

void voxelize_into(const TriMesh& mesh, VoxelGrid& grid) {
    MeshBvh bvh(mesh);
    Vec3 half{grid.h * 0.5, grid.h * 0.5, grid.h * 0.5};

    // surface pass: mark voxels overlapped by a triangle
    size_t tri_count = mesh.triangles.size();
#pragma omp parallel for schedule(dynamic, 16)
    for (long long t = 0; t < (long long)tri_count; ++t) {
        const auto& tri = mesh.triangles[t];
        Vec3 a = mesh.vertices[tri[0]], b = mesh.vertices[tri[1]], c = mesh.vertices[tri[2]];
        Aabb tb;
        tb.expand(a);
        tb.expand(b);
        tb.expand(c);
        int i0 = std::max(0, int(std::floor((tb.min.x - grid.origin.x) / grid.h)));
        int j0 = std::max(0, int(std::floor((tb.min.y - grid.origin.y) / grid.h)));
        int k0 = std::max(0, int(std::floor((tb.min.z - grid.origin.z) / grid.h)));
        int i1 = std::min(grid.nx - 1, int(std::floor((tb.max.x - grid.origin.x) / grid.h)));
        int j1 = std::min(grid.ny - 1, int(std::floor((tb.max.y - grid.origin.y) / grid.h)));
        int k1 = std::min(grid.nz - 1, int(std::floor((tb.max.z - grid.origin.z) / grid.h)));
        for (int k = k0; k <= k1; ++k)
            for (int j = j0; j <= j1; ++j)
                for (int i = i0; i <= i1; ++i) {
                    Vec3 center = grid.origin +
                                  Vec3{(i + 0.5) * grid.h, (j + 0.5) * grid.h, (k + 0.5) * grid.h};
                    if (triangle_box_overlap(center, half, a, b, c))
                        grid.occupied[grid.index(i, j, k)] = 1; // idempotent write
                }
    }

    // interior pass: parity test at centers not already marked
#pragma omp parallel for schedule(dynamic, 1) collapse(2)
    for (int k = 0; k < grid.nz; ++k)
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) {
                size_t idx = grid.index(i, j, k);
                if (grid.occupied[idx]) continue;
                Vec3 center = grid.origin +
                              Vec3{(i + 0.5) * grid.h, (j + 0.5) * grid.h, (k + 0.5) * grid.h};
                if (point_inside_parity(bvh, center)) grid.occupied[idx] = 1;
            }
}

} // namespace

double voxel_iou(const TriMesh& a, const TriMesh& b, double voxel) {
    if (!(voxel > 0.0)) throw InvalidInput("voxel_iou: voxel size must be > 0");
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return 0.0;

    Aabb joint = a.bounds();
    joint.expand(b.bounds());
    Vec3 ext = joint.extent();
    auto cells = [&](double e) { return std::max(1, int(std::ceil(e / voxel - 1e-12))); };

    VoxelGrid ga, gb;
    ga.origin = gb.origin = joint.min;
    ga.h = gb.h = voxel;
    ga.nx = gb.nx = cells(ext.x);
    ga.ny = gb.ny = cells(ext.y);
    ga.nz = gb.nz = cells(ext.z);
    size_t total = size_t(ga.nx) * size_t(ga.ny) * size_t(ga.nz);
    ga.occupied.assign(total, 0);
    gb.occupied.assign(total, 0);

    voxelize_into(a, ga);
    voxelize_into(b, gb);

    size_t inter = 0, uni = 0;
#pragma omp parallel for schedule(static) reduction(+ : inter, uni)
    for (long long i = 0; i < (long long)total; ++i) {
        bool oa = ga.occupied[i] != 0, ob = gb.occupied[i] != 0;
        inter += (oa && ob) ? 1 : 0;
        uni += (oa || ob) ? 1 : 0;
    }
    return uni == 0 ? 0.0 : double(inter) / double(uni);
}

} // namespace srk
