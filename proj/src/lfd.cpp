#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "srk/error.hpp"
#include "srk/metrics.hpp"

namespace srk {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Mat3 = std::array<double, 9>;

Vec3 mat_apply(const Mat3& m, const Vec3& v) {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z, m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
}

Mat3 mat_mul(const Mat3& a, const Mat3& b) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += a[i * 3 + k] * b[k * 3 + j];
            r[i * 3 + j] = s;
        }
    return r;
}

Mat3 axis_angle(const Vec3& axis_in, double angle) {
    Vec3 u = normalized(axis_in);
    double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
    return {c + u.x * u.x * t,       u.x * u.y * t - u.z * s, u.x * u.z * t + u.y * s,
            u.y * u.x * t + u.z * s, c + u.y * u.y * t,       u.y * u.z * t - u.x * s,
            u.z * u.x * t - u.y * s, u.z * u.y * t + u.x * s, c + u.z * u.z * t};
}

// The 20 dodecahedron vertex directions, unit length, fixed order.
const std::array<Vec3, 20>& view_directions() {
    static const std::array<Vec3, 20> dirs = [] {
        const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
        const double inv = 1.0 / phi;
        std::array<Vec3, 20> v{};
        int n = 0;
        for (int sx : {-1, 1})
            for (int sy : {-1, 1})
                for (int sz : {-1, 1}) v[n++] = {double(sx), double(sy), double(sz)};
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) v[n++] = {0.0, sy * inv, sz * phi};
        for (int sx : {-1, 1})
            for (int sy : {-1, 1}) v[n++] = {sx * inv, sy * phi, 0.0};
        for (int sx : {-1, 1})
            for (int sz : {-1, 1}) v[n++] = {sx * phi, 0.0, sz * inv};
        for (auto& d : v) d = normalized(d);
        return v;
    }();
    return dirs;
}

// The 60 rotations of the icosahedral group expressed as permutations of the
// 20 view directions: perm[i] is the index of R * v_i.
const std::vector<std::array<int, 20>>& view_permutations() {
    static const std::vector<std::array<int, 20>> perms = [] {
        const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
        Mat3 g5 = axis_angle({0.0, 1.0, phi}, 2.0 * kPi / 5.0);  // 5-fold face axis
        Mat3 g3 = axis_angle({1.0, 1.0, 1.0}, 2.0 * kPi / 3.0);  // 3-fold vertex axis

        auto same = [](const Mat3& a, const Mat3& b) {
            for (int i = 0; i < 9; ++i)
                if (std::fabs(a[i] - b[i]) > 1e-6) return false;
            return true;
        };

        std::vector<Mat3> group{Mat3{1, 0, 0, 0, 1, 0, 0, 0, 1}};
        bool grew = true;
        while (grew) {
            grew = false;
            for (size_t i = 0; i < group.size(); ++i)
                for (const Mat3* g : {&g5, &g3}) {
                    Mat3 cand = mat_mul(group[i], *g);
                    bool known = false;
                    for (const auto& m : group)
                        if (same(m, cand)) {
                            known = true;
                            break;
                        }
                    if (!known) {
                        group.push_back(cand);
                        grew = true;
                    }
                }
        }
        if (group.size() != 60) throw std::logic_error("icosahedral group closure failed");

        const auto& dirs = view_directions();
        std::vector<std::array<int, 20>> out;
        for (const auto& m : group) {
            std::array<int, 20> perm{};
            for (int i = 0; i < 20; ++i) {
                Vec3 r = mat_apply(m, dirs[i]);
                int best = -1;
                double best_d = 1e9;
                for (int j = 0; j < 20; ++j) {
                    double d = norm(r - dirs[j]);
                    if (d < best_d) {
                        best_d = d;
                        best = j;
                    }
                }
                if (best_d > 1e-6) throw std::logic_error("rotation does not permute views");
                perm[i] = best;
            }
            out.push_back(perm);
        }
        return out;
    }();
    return perms;
}

// Zernike radial polynomial R_nm at rho, |m| <= n, n - m even.
double zernike_radial(int n, int m, double rho) {
    double sum = 0.0;
    auto fact = [](int k) {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    };
    for (int s = 0; s <= (n - m) / 2; ++s) {
        double c = fact(n - s) / (fact(s) * fact((n + m) / 2 - s) * fact((n - m) / 2 - s));
        if (s % 2) c = -c;
        sum += c * std::pow(rho, n - 2 * s);
    }
    return sum;
}

// Rotation-invariant moment magnitudes |Z_nm| of a binary image over the
// inscribed unit disk.
std::vector<double> zernike_magnitudes(const std::vector<uint8_t>& img, int size, int order) {
    std::vector<std::pair<int, int>> nm;
    for (int n = 0; n <= order; ++n)
        for (int m = n % 2; m <= n; m += 2) nm.push_back({n, m});

    std::vector<double> re(nm.size(), 0.0), im(nm.size(), 0.0);
    double cell = 2.0 / size;
    double darea = cell * cell;
    for (int py = 0; py < size; ++py) {
        double y = -1.0 + (py + 0.5) * cell;
        for (int px = 0; px < size; ++px) {
            if (!img[size_t(py) * size + px]) continue;
            double x = -1.0 + (px + 0.5) * cell;
            double rho = std::sqrt(x * x + y * y);
            if (rho > 1.0) continue;
            double theta = std::atan2(y, x);
            for (size_t k = 0; k < nm.size(); ++k) {
                auto [n, m] = nm[k];
                double r = zernike_radial(n, m, rho);
                re[k] += r * std::cos(m * theta);
                im[k] -= r * std::sin(m * theta);
            }
        }
    }
    std::vector<double> mags(nm.size());
    for (size_t k = 0; k < nm.size(); ++k) {
        auto [n, m] = nm[k];
        double scale = (n + 1) / kPi * darea;
        mags[k] = std::hypot(re[k] * scale, im[k] * scale);
    }
    return mags;
}

void rasterize_silhouette(const std::vector<Vec3>& verts,
                          const std::vector<std::array<uint32_t, 3>>& tris, const Vec3& dir,
                          int size, std::vector<uint8_t>& img) {
    // orthographic basis perpendicular to the view direction
    int smallest = 0;
    if (std::fabs(dir.y) < std::fabs(dir[smallest])) smallest = 1;
    if (std::fabs(dir.z) < std::fabs(dir[smallest])) smallest = 2;
    Vec3 axis{0, 0, 0};
    axis[smallest] = 1.0;
    Vec3 u = normalized(cross(dir, axis));
    Vec3 v = cross(dir, u);

    std::fill(img.begin(), img.end(), 0);
    double cell = 2.0 / size;
    for (const auto& tri : tris) {
        double ax = dot(verts[tri[0]], u), ay = dot(verts[tri[0]], v);
        double bx = dot(verts[tri[1]], u), by = dot(verts[tri[1]], v);
        double cx = dot(verts[tri[2]], u), cy = dot(verts[tri[2]], v);
        double lox = std::min({ax, bx, cx}), hix = std::max({ax, bx, cx});
        double loy = std::min({ay, by, cy}), hiy = std::max({ay, by, cy});
        int px0 = std::max(0, int(std::floor((lox + 1.0) / cell)));
        int px1 = std::min(size - 1, int(std::floor((hix + 1.0) / cell)));
        int py0 = std::max(0, int(std::floor((loy + 1.0) / cell)));
        int py1 = std::min(size - 1, int(std::floor((hiy + 1.0) / cell)));
        for (int py = py0; py <= py1; ++py) {
            double y = -1.0 + (py + 0.5) * cell;
            for (int px = px0; px <= px1; ++px) {
                double x = -1.0 + (px + 0.5) * cell;
                double w0 = (bx - ax) * (y - ay) - (by - ay) * (x - ax);
                double w1 = (cx - bx) * (y - by) - (cy - by) * (x - bx);
                double w2 = (ax - cx) * (y - cy) - (ay - cy) * (x - cx);
                bool pos = w0 >= 0 && w1 >= 0 && w2 >= 0;
                bool neg = w0 <= 0 && w1 <= 0 && w2 <= 0;
                if (pos || neg) img[size_t(py) * size + px] = 1;
            }
        }
    }
}

} // namespace

std::vector<std::vector<double>> lightfield_descriptor(const TriMesh& mesh,
                                                       const LfdConfig& cfg) {
    if (mesh.empty()) throw InvalidInput("lightfield: empty mesh");
    if (cfg.image_size < 32) throw InvalidInput("lightfield: image_size must be >= 32");

    // normalize to the bounding sphere around the bbox center
    Aabb box = mesh.bounds();
    Vec3 center = box.center();
    double radius = 0.0;
    for (const auto& p : mesh.vertices) radius = std::max(radius, norm(p - center));
    if (!(radius > 1e-12)) throw InvalidInput("lightfield: degenerate zero-extent mesh");
    std::vector<Vec3> verts(mesh.vertices.size());
    for (size_t i = 0; i < verts.size(); ++i) verts[i] = (mesh.vertices[i] - center) / radius;

    const auto& dirs = view_directions();
    std::vector<std::vector<double>> desc(dirs.size());
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < (long long)dirs.size(); ++i) {
        std::vector<uint8_t> img(size_t(cfg.image_size) * cfg.image_size);
        rasterize_silhouette(verts, mesh.triangles, dirs[i], cfg.image_size, img);
        desc[i] = zernike_magnitudes(img, cfg.image_size, cfg.zernike_order);
    }
    return desc;
}

double lightfield_distance(const TriMesh& a, const TriMesh& b, const LfdConfig& cfg) {
    auto da = lightfield_descriptor(a, cfg);
    auto db = lightfield_descriptor(b, cfg);
    const auto& perms = view_permutations();

    double best = std::numeric_limits<double>::infinity();
    for (const auto& perm : perms) {
        // summing the per-view values in sorted order makes the result
        // identical for a permutation and its inverse, so the distance is
        // exactly symmetric
        std::array<double, 20> per_view{};
        for (int i = 0; i < 20; ++i) {
            const auto& va = da[perm[i]];
            const auto& vb = db[i];
            double l1 = 0.0;
            for (size_t k = 0; k < va.size(); ++k) l1 += std::fabs(va[k] - vb[k]);
            per_view[i] = l1;
        }
        std::sort(per_view.begin(), per_view.end());
        double total = 0.0;
        for (double v : per_view) total += v;
        best = std::min(best, total / 20.0);
    }
    return best;
}

} // namespace srk
