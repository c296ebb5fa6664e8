#include "srk/latent.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include <Eigen/Dense>

#include "srk/container.hpp"
#include "srk/error.hpp"
#include "srk/rng.hpp"

namespace srk {

void ModelPool::validate() const {
    std::set<std::string> ids;
    for (const auto& e : entries) {
        if (e.code.size() != dim)
            throw InvalidInput("pool: entry '" + e.id + "' code dimension " +
                               std::to_string(e.code.size()) + " != " + std::to_string(dim));
        if (!ids.insert(e.id).second)
            throw InvalidInput("pool: duplicate id '" + e.id + "'");
    }
}

ModelPool load_pool(const std::string& path) {
    Container c = read_container(path, "srk.pool");
    ModelPool pool;
    size_t count = 0;
    try {
        pool.dim = c.header.at("dim").get<size_t>();
        count = c.header.at("count").get<size_t>();
        pool.frame = frame_from_string(c.header.value("frame", "unit"));
        for (const auto& je : c.header.at("entries")) {
            PoolEntry e;
            e.id = je.at("id").get<std::string>();
            e.category = je.at("category").get<std::string>();
            e.mesh_path = je.value("mesh", "");
            pool.entries.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception& e) {
        throw LoadError("pool: bad header in '" + path + "': " + e.what());
    }
    if (pool.entries.size() != count)
        throw LoadError("pool: header count " + std::to_string(count) + " != " +
                        std::to_string(pool.entries.size()) + " entries");

    std::vector<float> codes(count * pool.dim);
    PayloadReader r(c.payload);
    r.read_f32(codes.data(), codes.size(), "code matrix");
    r.expect_end("pool '" + path + "'");
    for (size_t i = 0; i < count; ++i) {
        auto& e = pool.entries[i];
        e.code.resize(pool.dim);
        for (size_t d = 0; d < pool.dim; ++d) e.code[d] = double(codes[i * pool.dim + d]);
    }
    pool.base_dir = std::filesystem::path(path).parent_path().string();
    pool.validate();
    return pool;
}

void save_pool(const std::string& path, const ModelPool& pool) {
    pool.validate();
    nlohmann::json header;
    header["format"] = "srk.pool";
    header["version"] = 1;
    header["dim"] = pool.dim;
    header["count"] = pool.entries.size();
    header["frame"] = frame_to_string(pool.frame);
    auto entries = nlohmann::json::array();
    for (const auto& e : pool.entries) {
        nlohmann::json je{{"id", e.id}, {"category", e.category}};
        if (!e.mesh_path.empty()) je["mesh"] = e.mesh_path;
        entries.push_back(je);
    }
    header["entries"] = entries;

    std::vector<float> codes;
    codes.reserve(pool.entries.size() * pool.dim);
    for (const auto& e : pool.entries)
        for (double v : e.code) codes.push_back(float(v));
    std::vector<uint8_t> payload;
    append_f32(payload, codes.data(), codes.size());
    write_container(path, header, payload);
}

std::vector<double> sample_code(const LatentShapeDistribution& dist, uint64_t seed) {
    dist.validate();
    Rng rng(seed);
    std::vector<double> z(dist.dim());
    for (size_t i = 0; i < z.size(); ++i) z[i] = dist.mu[i] + dist.sigma[i] * rng.normal();
    return z;
}

std::vector<double> expected_code(const LatentShapeDistribution& dist) {
    dist.validate();
    return dist.mu;
}

namespace {

double dist_sq(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

// Indices of pool entries passing the filter, ordered by (distance, id).
std::vector<size_t> nearest_entries(const ModelPool& pool, const std::vector<double>& z,
                                    const std::optional<std::string>& category_filter) {
    if (z.size() != pool.dim) throw InvalidInput("latent query dimension != pool dimension");
    std::vector<size_t> idx;
    for (size_t i = 0; i < pool.entries.size(); ++i)
        if (!category_filter || pool.entries[i].category == *category_filter) idx.push_back(i);
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        double da = dist_sq(pool.entries[a].code, z);
        double db = dist_sq(pool.entries[b].code, z);
        if (da != db) return da < db;
        return pool.entries[a].id < pool.entries[b].id;
    });
    return idx;
}

} // namespace

RetrievalResult retrieve(const ModelPool& pool, const std::vector<double>& z,
                         const std::optional<std::string>& category_filter) {
    auto idx = nearest_entries(pool, z, category_filter);
    if (idx.empty())
        throw NotFound(category_filter
                           ? "retrieve: no pool entries with category '" + *category_filter + "'"
                           : "retrieve: empty pool");
    return {idx.front(), std::sqrt(dist_sq(pool.entries[idx.front()].code, z))};
}

std::vector<double> project(const ModelPool& pool, const std::vector<double>& z,
                            const ProjectOptions& opts) {
    if (opts.k < 1) throw InvalidInput("project: k must be >= 1");
    auto idx = nearest_entries(pool, z, opts.category_filter);
    if (idx.size() < opts.k)
        throw InvalidInput("project: k = " + std::to_string(opts.k) + " exceeds pool size " +
                           std::to_string(idx.size()));
    size_t k = opts.k;
    size_t dim = pool.dim;

    Eigen::VectorXd target(dim);
    for (size_t d = 0; d < dim; ++d) target[long(d)] = z[d];

    if (opts.affine_span) {
        // affine hull through the neighbors; with k = 1 this is the neighbor itself
        const auto& origin = pool.entries[idx[0]].code;
        if (k == 1) return origin;
        Eigen::MatrixXd basis(dim, long(k - 1));
        for (size_t j = 1; j < k; ++j)
            for (size_t d = 0; d < dim; ++d)
                basis(long(d), long(j - 1)) = pool.entries[idx[j]].code[d] - origin[d];
        Eigen::VectorXd rhs = target;
        for (size_t d = 0; d < dim; ++d) rhs[long(d)] -= origin[d];
        Eigen::MatrixXd gram = basis.transpose() * basis;
        gram.diagonal().array() += 1e-10;
        Eigen::VectorXd alpha = gram.ldlt().solve(basis.transpose() * rhs);
        Eigen::VectorXd proj = basis * alpha;
        std::vector<double> out(dim);
        for (size_t d = 0; d < dim; ++d) out[d] = origin[d] + proj[long(d)];
        return out;
    }

    Eigen::MatrixXd basis(dim, long(k));
    for (size_t j = 0; j < k; ++j)
        for (size_t d = 0; d < dim; ++d) basis(long(d), long(j)) = pool.entries[idx[j]].code[d];
    Eigen::MatrixXd gram = basis.transpose() * basis;
    gram.diagonal().array() += 1e-10;
    Eigen::VectorXd alpha = gram.ldlt().solve(basis.transpose() * target);
    Eigen::VectorXd proj = basis * alpha;
    std::vector<double> out(dim);
    for (size_t d = 0; d < dim; ++d) out[d] = proj[long(d)];
    return out;
}

} // namespace srk
