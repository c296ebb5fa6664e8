#include "srk/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "srk/error.hpp"

namespace srk {

void ClusterConfig::validate() const {
    if (radii.empty()) throw InvalidInput("cluster config: empty radii list");
    for (double r : radii)
        if (!(r > 0.0)) throw InvalidInput("cluster config: radius must be > 0");
    if (min_points < 1) throw InvalidInput("cluster config: min_points must be >= 1");
    if (!(dedup_iou > 0.0 && dedup_iou <= 1.0))
        throw InvalidInput("cluster config: dedup_iou must be in (0, 1]");
}

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

uint64_t cell_key(const Vec3& p, double inv_cell) {
    auto q = [&](double v) {
        return uint64_t(int64_t(std::floor(v * inv_cell)) + (int64_t(1) << 20)) & 0x1fffff;
    };
    return (q(p.x) << 42) | (q(p.y) << 21) | q(p.z);
}

uint64_t shift_key(uint64_t key, int dx, int dy, int dz) {
    uint64_t x = ((key >> 42) + uint64_t(dx)) & 0x1fffff;
    uint64_t y = (((key >> 21) & 0x1fffff) + uint64_t(dy)) & 0x1fffff;
    uint64_t z = ((key & 0x1fffff) + uint64_t(dz)) & 0x1fffff;
    return (x << 42) | (y << 21) | z;
}

// One clustering pass over the given coordinates: connected components of the
// radius graph restricted to same-category edges. `subset` holds scene point
// indices; `coords` is parallel to it.
std::vector<std::vector<uint32_t>> radius_components(const std::vector<uint32_t>& subset,
                                                     const std::vector<Vec3>& coords,
                                                     const std::vector<CategoryId>& category,
                                                     double radius, size_t min_points) {
    size_t n = subset.size();
    std::vector<std::vector<uint32_t>> out;
    if (n == 0) return out;

    double inv_cell = 1.0 / radius;
    std::vector<std::pair<uint64_t, uint32_t>> cells(n);
    for (size_t i = 0; i < n; ++i) cells[i] = {cell_key(coords[i], inv_cell), uint32_t(i)};
    std::sort(cells.begin(), cells.end());

    double r2 = radius * radius;
#ifdef _OPENMP
    int threads = omp_get_max_threads();
#else
    int threads = 1;
#endif
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> edges(threads);

#pragma omp parallel for schedule(static)
    for (long long ii = 0; ii < (long long)n; ++ii) {
        uint32_t i = uint32_t(ii);
#ifdef _OPENMP
        auto& my_edges = edges[omp_get_thread_num()];
#else
        auto& my_edges = edges[0];
#endif
        uint64_t base = cell_key(coords[i], inv_cell);
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dz = -1; dz <= 1; ++dz) {
                    uint64_t key = shift_key(base, dx, dy, dz);
                    auto lo = std::lower_bound(cells.begin(), cells.end(),
                                               std::make_pair(key, uint32_t(0)));
                    for (auto it = lo; it != cells.end() && it->first == key; ++it) {
                        uint32_t j = it->second;
                        if (j <= i) continue;
                        if (category[subset[i]] != category[subset[j]]) continue;
                        if (norm_sq(coords[i] - coords[j]) <= r2) my_edges.push_back({i, j});
                    }
                }
    }

    Dsu dsu(n);
    for (const auto& bucket : edges)
        for (auto [a, b] : bucket) dsu.unite(int(a), int(b));

    std::vector<std::vector<uint32_t>> groups(n);
    for (size_t i = 0; i < n; ++i) groups[dsu.find(int(i))].push_back(subset[i]);
    for (auto& g : groups) {
        if (g.size() < min_points || g.empty()) continue;
        std::sort(g.begin(), g.end());
        out.push_back(std::move(g));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

} // namespace

std::vector<InstanceProposal> cluster_scene(const PointScene& scene, double radius,
                                            size_t min_points, bool dual_set,
                                            const LabelSystem& labels) {
    if (!(radius > 0.0)) throw InvalidInput("cluster_scene: radius must be > 0");
    scene.validate();

    std::vector<uint32_t> subset;
    subset.reserve(scene.size());
    for (uint32_t i = 0; i < scene.size(); ++i)
        if (!labels.is_stuff(scene.categories[i])) subset.push_back(i);

    std::vector<Vec3> shifted(subset.size());
    for (size_t k = 0; k < subset.size(); ++k)
        shifted[k] = scene.points[subset[k]] + scene.offsets[subset[k]];

    auto components =
        radius_components(subset, shifted, scene.categories, radius, min_points);
    if (dual_set) {
        std::vector<Vec3> original(subset.size());
        for (size_t k = 0; k < subset.size(); ++k) original[k] = scene.points[subset[k]];
        auto second =
            radius_components(subset, original, scene.categories, radius, min_points);
        components.insert(components.end(), std::make_move_iterator(second.begin()),
                          std::make_move_iterator(second.end()));
    }

    size_t max_size = 0;
    for (const auto& c : components) max_size = std::max(max_size, c.size());

    std::vector<InstanceProposal> proposals;
    proposals.reserve(components.size());
    for (auto& c : components) {
        InstanceProposal p;
        auto recon = labels.map_label(scene.categories[c.front()]);
        p.category = recon ? *recon : std::string();
        p.confidence = max_size ? double(c.size()) / double(max_size) : 0.0;
        p.point_indices = std::move(c);
        proposals.push_back(std::move(p));
    }
    return proposals;
}

std::vector<InstanceProposal> multi_scale_cluster(const PointScene& scene,
                                                  const ClusterConfig& cfg,
                                                  const LabelSystem& labels) {
    cfg.validate();
    std::vector<InstanceProposal> all;
    for (double r : cfg.radii) {
        auto part = cluster_scene(scene, r, cfg.min_points, cfg.dual_set, labels);
        all.insert(all.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    }
    auto kept = dedup_proposals(std::move(all), cfg.dedup_iou);

    size_t max_size = 0;
    for (const auto& p : kept) max_size = std::max(max_size, p.point_indices.size());
    for (auto& p : kept) {
        p.confidence = max_size ? double(p.point_indices.size()) / double(max_size) : 0.0;
        p.initial_box = proposal_initial_box(scene, p, cfg.arithmetic_angle_mean);
    }
    return kept;
}

double point_set_iou(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    size_t i = 0, j = 0, inter = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++inter;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    size_t uni = a.size() + b.size() - inter;
    return uni == 0 ? 0.0 : double(inter) / double(uni);
}

std::vector<InstanceProposal> dedup_proposals(std::vector<InstanceProposal> props,
                                              double iou_threshold) {
    if (!(iou_threshold > 0.0 && iou_threshold <= 1.0))
        throw InvalidInput("dedup_proposals: iou_threshold must be in (0, 1]");
    std::stable_sort(props.begin(), props.end(), [](const auto& a, const auto& b) {
        if (a.point_indices.size() != b.point_indices.size())
            return a.point_indices.size() > b.point_indices.size();
        return a.point_indices.front() < b.point_indices.front();
    });
    std::vector<InstanceProposal> kept;
    for (auto& p : props) {
        bool duplicate = false;
        for (const auto& k : kept)
            if (point_set_iou(p.point_indices, k.point_indices) >= iou_threshold) {
                duplicate = true;
                break;
            }
        if (!duplicate) kept.push_back(std::move(p));
    }
    return kept;
}

OrientedBox7DoF proposal_initial_box(const PointScene& scene, const InstanceProposal& prop,
                                     bool arithmetic_angle_mean) {
    if (prop.point_indices.empty()) throw InvalidInput("proposal_initial_box: empty proposal");

    Vec3 center{0, 0, 0};
    for (uint32_t i : prop.point_indices) center += scene.points[i] + scene.offsets[i];
    center = center / double(prop.point_indices.size());

    double rotation;
    if (arithmetic_angle_mean) {
        double sum = 0.0;
        for (uint32_t i : prop.point_indices) sum += scene.angles[i];
        rotation = wrap_angle(sum / double(prop.point_indices.size()));
    } else {
        double s = 0.0, c = 0.0;
        for (uint32_t i : prop.point_indices) {
            s += std::sin(scene.angles[i]);
            c += std::cos(scene.angles[i]);
        }
        rotation = wrap_angle(std::atan2(s, c));
    }

    Vec3 lo{0, 0, 0}, hi{0, 0, 0};
    bool first = true;
    for (uint32_t i : prop.point_indices) {
        Vec3 q = rotate_z(scene.points[i] - center, -rotation);
        if (first) {
            lo = hi = q;
            first = false;
        } else {
            lo = cwise_min(lo, q);
            hi = cwise_max(hi, q);
        }
    }

    OrientedBox7DoF box;
    box.center = center;
    box.z_rotation = rotation;
    box.scale = hi - lo;
    for (int k = 0; k < 3; ++k)
        if (box.scale[k] < kMinBoxScale) box.scale[k] = kMinBoxScale;
    return box;
}

} // namespace srk
