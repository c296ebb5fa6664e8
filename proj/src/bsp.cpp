#include "srk/bsp.hpp"

#include <algorithm>
#include <cmath>

#include "srk/container.hpp"
#include "srk/error.hpp"

namespace srk {

Activation activation_from_string(const std::string& s) {
    if (s == "identity") return Activation::Identity;
    if (s == "relu") return Activation::Relu;
    if (s == "sigmoid") return Activation::Sigmoid;
    throw LoadError("unknown activation '" + s + "'");
}

const char* activation_to_string(Activation a) {
    switch (a) {
        case Activation::Identity: return "identity";
        case Activation::Relu: return "relu";
        default: return "sigmoid";
    }
}

void BspDecoder::validate() const {
    if (layers.empty()) throw LoadError("decoder: no layers");
    size_t expect_in = d_shape + categories.size();
    for (size_t i = 0; i < layers.size(); ++i) {
        const auto& l = layers[i];
        std::string name = "layer " + std::to_string(i);
        if (l.in != expect_in)
            throw LoadError("decoder: " + name + " input dimension " + std::to_string(l.in) +
                            " does not chain from " + std::to_string(expect_in));
        if (l.weights.size() != l.in * l.out)
            throw LoadError("decoder: " + name + " weight matrix size mismatch");
        if (l.bias.size() != l.out)
            throw LoadError("decoder: " + name + " bias length " + std::to_string(l.bias.size()) +
                            " != " + std::to_string(l.out));
        expect_in = l.out;
    }
    if (expect_in != 4 * plane_count)
        throw LoadError("decoder: final layer outputs " + std::to_string(expect_in) +
                        " values, expected 4 * " + std::to_string(plane_count));
    if (membership.size() != plane_count * convex_count)
        throw LoadError("decoder: membership matrix size mismatch");
    for (uint8_t m : membership)
        if (m > 1) throw LoadError("decoder: membership entries must be 0 or 1");
    for (size_t c = 0; c < convex_count; ++c) {
        size_t members = 0;
        for (size_t p = 0; p < plane_count; ++p) members += membership[p * convex_count + c];
        if (members < 4)
            throw LoadError("decoder: convex " + std::to_string(c) + " has " +
                            std::to_string(members) + " member planes, need >= 4");
    }
}

size_t BspDecoder::category_index(const std::string& category) const {
    for (size_t i = 0; i < categories.size(); ++i)
        if (categories[i] == category) return i;
    throw InvalidInput("decoder: unknown category '" + category + "'");
}

PlaneSet PlaneSet::single_convex(std::vector<std::array<double, 4>> planes, Frame frame) {
    PlaneSet ps;
    ps.membership.assign(planes.size(), 1);
    ps.planes = std::move(planes);
    ps.convex_count = 1;
    ps.frame = frame;
    return ps;
}

BspDecoder load_decoder(const std::string& path) {
    Container c = read_container(path, "srk.bsp");
    BspDecoder dec;
    try {
        dec.d_shape = c.header.at("d_shape").get<size_t>();
        dec.categories = c.header.at("categories").get<std::vector<std::string>>();
        dec.frame = frame_from_string(c.header.at("frame").get<std::string>());
        dec.plane_count = c.header.at("planes").get<size_t>();
        dec.convex_count = c.header.at("convexes").get<size_t>();
        for (const auto& jl : c.header.at("layers")) {
            DenseLayer l;
            l.in = jl.at("in").get<size_t>();
            l.out = jl.at("out").get<size_t>();
            l.activation = activation_from_string(jl.at("activation").get<std::string>());
            dec.layers.push_back(std::move(l));
        }
    } catch (const nlohmann::json::exception& e) {
        throw LoadError("decoder: bad header in '" + path + "': " + e.what());
    }

    PayloadReader r(c.payload);
    for (size_t i = 0; i < dec.layers.size(); ++i) {
        auto& l = dec.layers[i];
        l.weights.resize(l.in * l.out);
        l.bias.resize(l.out);
        r.read_f32(l.weights.data(), l.weights.size(), "layer " + std::to_string(i) + " weights");
        r.read_f32(l.bias.data(), l.bias.size(), "layer " + std::to_string(i) + " bias");
    }
    std::vector<float> memb(dec.plane_count * dec.convex_count);
    r.read_f32(memb.data(), memb.size(), "membership");
    r.expect_end("decoder '" + path + "'");
    dec.membership.resize(memb.size());
    for (size_t i = 0; i < memb.size(); ++i) {
        if (memb[i] != 0.0f && memb[i] != 1.0f)
            throw LoadError("decoder: membership entry " + std::to_string(i) + " is not 0 or 1");
        dec.membership[i] = memb[i] != 0.0f ? 1 : 0;
    }
    dec.validate();
    return dec;
}

void save_decoder(const std::string& path, const BspDecoder& dec) {
    dec.validate();
    nlohmann::json header;
    header["format"] = "srk.bsp";
    header["version"] = 1;
    header["d_shape"] = dec.d_shape;
    header["categories"] = dec.categories;
    header["frame"] = frame_to_string(dec.frame);
    header["planes"] = dec.plane_count;
    header["convexes"] = dec.convex_count;
    auto layers = nlohmann::json::array();
    for (const auto& l : dec.layers)
        layers.push_back({{"in", l.in}, {"out", l.out},
                          {"activation", activation_to_string(l.activation)}});
    header["layers"] = layers;

    std::vector<uint8_t> payload;
    for (const auto& l : dec.layers) {
        append_f32(payload, l.weights.data(), l.weights.size());
        append_f32(payload, l.bias.data(), l.bias.size());
    }
    std::vector<float> memb(dec.membership.begin(), dec.membership.end());
    append_f32(payload, memb.data(), memb.size());
    write_container(path, header, payload);
}

PlaneSet decode_planes(const BspDecoder& dec, const std::vector<double>& z,
                       const std::string& category) {
    if (z.size() != dec.d_shape)
        throw InvalidInput("decode_planes: latent dimension " + std::to_string(z.size()) +
                           " != decoder d_shape " + std::to_string(dec.d_shape));
    size_t cat = dec.category_index(category);

    std::vector<double> x(dec.d_shape + dec.categories.size(), 0.0);
    std::copy(z.begin(), z.end(), x.begin());
    x[dec.d_shape + cat] = 1.0;

    for (const auto& l : dec.layers) {
        std::vector<double> y(l.out);
        for (size_t r = 0; r < l.out; ++r) {
            double acc = l.bias[r];
            const float* row = l.weights.data() + r * l.in;
            for (size_t k = 0; k < l.in; ++k) acc += double(row[k]) * x[k];
            switch (l.activation) {
                case Activation::Identity: break;
                case Activation::Relu: acc = acc > 0.0 ? acc : 0.0; break;
                case Activation::Sigmoid: acc = 1.0 / (1.0 + std::exp(-acc)); break;
            }
            y[r] = acc;
        }
        x = std::move(y);
    }

    PlaneSet ps;
    ps.planes.resize(dec.plane_count);
    for (size_t p = 0; p < dec.plane_count; ++p)
        ps.planes[p] = {x[4 * p], x[4 * p + 1], x[4 * p + 2], x[4 * p + 3]};
    ps.membership = dec.membership;
    ps.convex_count = dec.convex_count;
    ps.frame = dec.frame;
    return ps;
}

bool occupancy(const PlaneSet& ps, const Vec3& point) {
    for (size_t c = 0; c < ps.convex_count; ++c) {
        bool inside = true;
        for (size_t p = 0; p < ps.planes.size() && inside; ++p) {
            if (!ps.member(p, c)) continue;
            const auto& pl = ps.planes[p];
            inside = pl[0] * point.x + pl[1] * point.y + pl[2] * point.z + pl[3] <= 0.0;
        }
        if (inside) return true;
    }
    return false;
}

namespace {

constexpr double kClipEps = 1e-9;

double plane_eval(const std::array<double, 4>& pl, const Vec3& p) {
    return pl[0] * p.x + pl[1] * p.y + pl[2] * p.z + pl[3];
}

// Sutherland-Hodgman against a*x + d <= 0, inclusive within kClipEps.
std::vector<Vec3> clip_polygon(const std::vector<Vec3>& poly, const std::array<double, 4>& pl) {
    std::vector<Vec3> out;
    size_t n = poly.size();
    out.reserve(n + 2);
    for (size_t i = 0; i < n; ++i) {
        const Vec3& a = poly[i];
        const Vec3& b = poly[(i + 1) % n];
        double fa = plane_eval(pl, a);
        double fb = plane_eval(pl, b);
        bool ina = fa <= kClipEps;
        bool inb = fb <= kClipEps;
        if (ina) out.push_back(a);
        if (ina != inb) {
            double t = fa / (fa - fb);
            out.push_back(a + (b - a) * t);
        }
    }
    return out;
}

// One convex: face polygons by clipping a large in-plane seed square against
// every other half-space. `planes` are unit-normalized and deduplicated.
void extract_convex(const std::vector<std::array<double, 4>>& planes, TriMesh& out) {
    for (size_t i = 0; i < planes.size(); ++i) {
        const auto& pl = planes[i];
        Vec3 n{pl[0], pl[1], pl[2]};
        Vec3 p0 = n * (-pl[3]);

        int smallest = 0;
        if (std::fabs(n.y) < std::fabs(n[smallest])) smallest = 1;
        if (std::fabs(n.z) < std::fabs(n[smallest])) smallest = 2;
        Vec3 axis{0, 0, 0};
        axis[smallest] = 1.0;
        Vec3 u = normalized(cross(n, axis));
        Vec3 v = cross(n, u);

        const double R = 4.0;
        std::vector<Vec3> poly{p0 + (u + v) * R, p0 + (v - u) * R, p0 - (u + v) * R,
                               p0 + (u - v) * R};
        for (size_t j = 0; j < planes.size() && poly.size() >= 3; ++j) {
            if (j == i) continue;
            poly = clip_polygon(poly, planes[j]);
        }
        if (poly.size() < 3) continue;

        // drop near-duplicate consecutive vertices left by grazing clips
        std::vector<Vec3> clean;
        for (const auto& q : poly)
            if (clean.empty() || norm_sq(q - clean.back()) > 1e-24) clean.push_back(q);
        while (clean.size() >= 2 && norm_sq(clean.front() - clean.back()) <= 1e-24)
            clean.pop_back();
        if (clean.size() < 3) continue;

        Vec3 area_vec{0, 0, 0};
        for (size_t k = 1; k + 1 < clean.size(); ++k)
            area_vec += cross(clean[k] - clean[0], clean[k + 1] - clean[0]);
        if (norm(area_vec) * 0.5 < 1e-12) continue;

        uint32_t base = uint32_t(out.vertices.size());
        out.vertices.insert(out.vertices.end(), clean.begin(), clean.end());
        for (uint32_t k = 1; k + 1 < clean.size(); ++k)
            out.triangles.push_back({base, base + k, base + k + 1});
    }
}

} // namespace

TriMesh extract_mesh(const PlaneSet& ps) {
    double lo = ps.frame == Frame::UnitMinCorner ? 0.0 : -0.5;
    double hi = ps.frame == Frame::UnitMinCorner ? 1.0 : 0.5;
    const std::array<std::array<double, 4>, 6> cube = {{
        {-1, 0, 0, lo},
        {1, 0, 0, -hi},
        {0, -1, 0, lo},
        {0, 1, 0, -hi},
        {0, 0, -1, lo},
        {0, 0, 1, -hi},
    }};

    std::vector<TriMesh> parts(ps.convex_count);
#pragma omp parallel for schedule(dynamic)
    for (long long c = 0; c < (long long)ps.convex_count; ++c) {
        // normalize, drop trivially-true planes, detect infeasible ones
        std::vector<std::array<double, 4>> planes;
        bool infeasible = false;
        auto add_plane = [&](const std::array<double, 4>& raw) {
            Vec3 n{raw[0], raw[1], raw[2]};
            double len = norm(n);
            if (len < 1e-12) {
                if (raw[3] > kClipEps) infeasible = true; // 0 <= -d fails everywhere
                return;
            }
            std::array<double, 4> unit = {raw[0] / len, raw[1] / len, raw[2] / len,
                                          raw[3] / len};
            for (const auto& kept : planes) {
                double ndot = kept[0] * unit[0] + kept[1] * unit[1] + kept[2] * unit[2];
                if (ndot > 1.0 - 1e-9 && std::fabs(kept[3] - unit[3]) < 1e-9) return;
            }
            planes.push_back(unit);
        };
        for (size_t p = 0; p < ps.planes.size(); ++p)
            if (ps.member(p, size_t(c))) add_plane(ps.planes[p]);
        for (const auto& f : cube) add_plane(f);

        if (!infeasible) extract_convex(planes, parts[c]);
    }

    TriMesh out;
    out.category = std::string();
    for (const auto& part : parts) {
        uint32_t base = uint32_t(out.vertices.size());
        out.vertices.insert(out.vertices.end(), part.vertices.begin(), part.vertices.end());
        for (const auto& t : part.triangles)
            out.triangles.push_back({t[0] + base, t[1] + base, t[2] + base});
    }
    return out;
}

std::vector<double> interpolate_latent(const std::vector<double>& a, const std::vector<double>& b,
                                       double t) {
    if (a.size() != b.size())
        throw InvalidInput("interpolate_latent: dimension mismatch " + std::to_string(a.size()) +
                           " vs " + std::to_string(b.size()));
    std::vector<double> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = (1.0 - t) * a[i] + t * b[i];
    return out;
}

} // namespace srk
