#include "srk/bvh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "srk/error.hpp"

namespace srk {

Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    // Ericson, Real-Time Collision Detection, 5.1.5
    Vec3 ab = b - a, ac = c - a, ap = p - a;
    double d1 = dot(ab, ap), d2 = dot(ac, ap);
    if (d1 <= 0.0 && d2 <= 0.0) return a;

    Vec3 bp = p - b;
    double d3 = dot(ab, bp), d4 = dot(ac, bp);
    if (d3 >= 0.0 && d4 <= d3) return b;

    double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return a + ab * (d1 / (d1 - d3));

    Vec3 cp = p - c;
    double d5 = dot(ab, cp), d6 = dot(ac, cp);
    if (d6 >= 0.0 && d5 <= d6) return c;

    double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return a + ac * (d2 / (d2 - d6));

    double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0)
        return b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)));

    double denom = 1.0 / (va + vb + vc);
    return a + ab * (vb * denom) + ac * (vc * denom);
}

bool ray_triangle(const Vec3& origin, const Vec3& dir, const Vec3& a, const Vec3& b,
                  const Vec3& c, double& t) {
    const double eps = 1e-14;
    Vec3 e1 = b - a, e2 = c - a;
    Vec3 h = cross(dir, e2);
    double det = dot(e1, h);
    if (std::fabs(det) < eps) return false;
    double inv = 1.0 / det;
    Vec3 s = origin - a;
    double u = dot(s, h) * inv;
    if (u < 0.0 || u > 1.0) return false;
    Vec3 q = cross(s, e1);
    double v = dot(dir, q) * inv;
    if (v < 0.0 || u + v > 1.0) return false;
    t = dot(e2, q) * inv;
    return t >= 0.0;
}

namespace {

bool ray_box(const Vec3& origin, const Vec3& inv_dir, const Aabb& box, double t_lo, double t_hi) {
    for (int i = 0; i < 3; ++i) {
        double t0 = (box.min[i] - origin[i]) * inv_dir[i];
        double t1 = (box.max[i] - origin[i]) * inv_dir[i];
        if (inv_dir[i] < 0.0) std::swap(t0, t1);
        t_lo = std::max(t_lo, t0);
        t_hi = std::min(t_hi, t1);
        if (t_hi < t_lo) return false;
    }
    return true;
}

} // namespace

MeshBvh::MeshBvh(TriMesh mesh) : mesh_(std::move(mesh)) {
    if (mesh_.empty()) throw InvalidInput("bvh: empty mesh");
    size_t n = mesh_.triangles.size();
    std::vector<Aabb> tri_boxes(n);
    std::vector<Vec3> centroids(n);
    for (size_t t = 0; t < n; ++t) {
        const auto& tri = mesh_.triangles[t];
        Aabb b;
        for (int k = 0; k < 3; ++k) b.expand(mesh_.vertices[tri[k]]);
        tri_boxes[t] = b;
        centroids[t] = (mesh_.vertices[tri[0]] + mesh_.vertices[tri[1]] + mesh_.vertices[tri[2]]) / 3.0;
    }
    order_.resize(n);
    for (size_t i = 0; i < n; ++i) order_[i] = uint32_t(i);
    nodes_.reserve(2 * n);
    build(order_, 0, int32_t(n), centroids, tri_boxes);
}

int32_t MeshBvh::build(std::vector<uint32_t>& items, int32_t begin, int32_t end,
                       const std::vector<Vec3>& centroids, const std::vector<Aabb>& tri_boxes) {
    int32_t node_id = int32_t(nodes_.size());
    nodes_.emplace_back();
    Aabb box;
    for (int32_t i = begin; i < end; ++i) box.expand(tri_boxes[items[i]]);
    nodes_[node_id].box = box;

    int32_t count = end - begin;
    if (count <= 4) {
        nodes_[node_id].left = begin;
        nodes_[node_id].count = count;
        return node_id;
    }

    Aabb cbox;
    for (int32_t i = begin; i < end; ++i) cbox.expand(centroids[items[i]]);
    Vec3 ext = cbox.extent();
    int axis = 0;
    if (ext.y > ext.x) axis = 1;
    if (ext.z > ext[axis]) axis = 2;

    double split = 0.5 * (cbox.min[axis] + cbox.max[axis]);
    auto mid_it = std::partition(items.begin() + begin, items.begin() + end,
                                 [&](uint32_t t) { return centroids[t][axis] < split; });
    int32_t mid = int32_t(mid_it - items.begin());
    if (mid == begin || mid == end) {
        mid = begin + count / 2;
        std::nth_element(items.begin() + begin, items.begin() + mid, items.begin() + end,
                         [&](uint32_t a, uint32_t b) {
                             return centroids[a][axis] < centroids[b][axis];
                         });
    }

    int32_t left = build(items, begin, mid, centroids, tri_boxes);
    int32_t right = build(items, mid, end, centroids, tri_boxes);
    nodes_[node_id].left = left;
    nodes_[node_id].right = right;
    nodes_[node_id].count = 0;
    return node_id;
}

Vec3 MeshBvh::closest_point(const Vec3& p) const {
    double best_sq = std::numeric_limits<double>::infinity();
    Vec3 best = p;
    int32_t stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[stack[--top]];
        if (node.box.dist_sq(p) >= best_sq) continue;
        if (node.count > 0) {
            for (int32_t i = 0; i < node.count; ++i) {
                const auto& tri = mesh_.triangles[order_[node.left + i]];
                Vec3 q = closest_point_on_triangle(p, mesh_.vertices[tri[0]],
                                                   mesh_.vertices[tri[1]], mesh_.vertices[tri[2]]);
                double d = norm_sq(q - p);
                if (d < best_sq) {
                    best_sq = d;
                    best = q;
                }
            }
        } else {
            // visit the nearer child first
            double dl = nodes_[node.left].box.dist_sq(p);
            double dr = nodes_[node.right].box.dist_sq(p);
            if (dl < dr) {
                stack[top++] = node.right;
                stack[top++] = node.left;
            } else {
                stack[top++] = node.left;
                stack[top++] = node.right;
            }
        }
    }
    return best;
}

double MeshBvh::closest_distance(const Vec3& p) const { return norm(closest_point(p) - p); }

int MeshBvh::count_ray_crossings(const Vec3& origin, const Vec3& dir, double t_min) const {
    Vec3 inv_dir{1.0 / dir.x, 1.0 / dir.y, 1.0 / dir.z};
    int crossings = 0;
    int32_t stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[stack[--top]];
        if (!ray_box(origin, inv_dir, node.box, 0.0, std::numeric_limits<double>::infinity()))
            continue;
        if (node.count > 0) {
            for (int32_t i = 0; i < node.count; ++i) {
                const auto& tri = mesh_.triangles[order_[node.left + i]];
                double t;
                if (ray_triangle(origin, dir, mesh_.vertices[tri[0]], mesh_.vertices[tri[1]],
                                 mesh_.vertices[tri[2]], t) &&
                    t > t_min)
                    ++crossings;
            }
        } else {
            stack[top++] = node.left;
            stack[top++] = node.right;
        }
    }
    return crossings;
}

bool MeshBvh::ray_blocked(const Vec3& origin, const Vec3& dir, double t_lo, double t_hi) const {
    Vec3 inv_dir{1.0 / dir.x, 1.0 / dir.y, 1.0 / dir.z};
    int32_t stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[stack[--top]];
        if (!ray_box(origin, inv_dir, node.box, t_lo, t_hi)) continue;
        if (node.count > 0) {
            for (int32_t i = 0; i < node.count; ++i) {
                const auto& tri = mesh_.triangles[order_[node.left + i]];
                double t;
                if (ray_triangle(origin, dir, mesh_.vertices[tri[0]], mesh_.vertices[tri[1]],
                                 mesh_.vertices[tri[2]], t) &&
                    t > t_lo && t < t_hi)
                    return true;
            }
        } else {
            stack[top++] = node.left;
            stack[top++] = node.right;
        }
    }
    return false;
}

void MeshBvh::collect_overlapping(const Aabb& box, std::vector<uint32_t>& out) const {
    int32_t stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[stack[--top]];
        bool overlap = node.box.min.x <= box.max.x && node.box.max.x >= box.min.x &&
                       node.box.min.y <= box.max.y && node.box.max.y >= box.min.y &&
                       node.box.min.z <= box.max.z && node.box.max.z >= box.min.z;
        if (!overlap) continue;
        if (node.count > 0) {
            for (int32_t i = 0; i < node.count; ++i) out.push_back(order_[node.left + i]);
        } else {
            stack[top++] = node.left;
            stack[top++] = node.right;
        }
    }
}

bool point_inside_parity(const MeshBvh& bvh, const Vec3& p) {
    // Fixed direction with incommensurate components so axis-aligned fixture
    // geometry never produces edge-grazing hits.
    static const Vec3 dir = normalized(Vec3{0.2971356, 0.5786421, 0.7594372});
    return (bvh.count_ray_crossings(p, dir) % 2) == 1;
}

} // namespace srk
