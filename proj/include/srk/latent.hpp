#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "srk/canonical.hpp"
#include "srk/scene.hpp"

namespace srk {

struct PoolEntry {
    std::string id;
    std::string category;
    std::vector<double> code;
    std::string mesh_path; // optional, relative to the pool file
};

// Table of latent codes with unique ids, one shared dimension, and optional
// resident meshes (loaded on demand by the pipeline).
struct ModelPool {
    std::vector<PoolEntry> entries;
    size_t dim = 0;
    Frame frame = Frame::UnitMinCorner; // frame of the referenced meshes
    std::string base_dir;               // directory of the pool file

    void validate() const;
};

ModelPool load_pool(const std::string& path);
void save_pool(const std::string& path, const ModelPool& pool);

// Reparameterized draw z = mu + sigma * eps with eps ~ N(0, 1) per component
// from the seeded library PRNG.
std::vector<double> sample_code(const LatentShapeDistribution& dist, uint64_t seed);

// The distribution's expectation, mu verbatim.
std::vector<double> expected_code(const LatentShapeDistribution& dist);

struct RetrievalResult {
    size_t entry_index;
    double distance;
};

// Nearest pool code by Euclidean distance, ties broken by smallest id
// (lexicographic). Throws NotFound when the (filtered) pool is empty.
RetrievalResult retrieve(const ModelPool& pool, const std::vector<double>& z,
                         const std::optional<std::string>& category_filter = std::nullopt);

struct ProjectOptions {
    size_t k = 1;
    std::optional<std::string> category_filter;
    bool affine_span = false; // project onto the affine hull instead of the linear span
};

// Orthogonal projection of z onto the span of its k nearest pool codes,
// solved through Tikhonov-damped normal equations (damping 1e-10).
std::vector<double> project(const ModelPool& pool, const std::vector<double>& z,
                            const ProjectOptions& opts = {});

} // namespace srk
