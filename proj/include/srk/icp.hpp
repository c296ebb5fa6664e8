#pragma once

#include <cstdint>
#include <vector>

#include "srk/mesh.hpp"

namespace srk {

struct IcpConfig {
    size_t max_iterations = 50;
    double convergence_eps = 1e-5; // stop when the RMS change drops below this
    size_t surface_samples = 4096;
    bool with_scale = false;
    double max_correspondence = 0.2; // meters; farther pairs are dropped
    uint64_t seed = 0;               // surface sampling seed

    void validate() const;
};

// Similarity transform p -> scale * R * p + t; scale stays 1 unless the
// config enables it.
struct RigidTransform {
    double rotation[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    Vec3 translation;
    double scale = 1.0;

    Vec3 apply(const Vec3& p) const;
    static RigidTransform identity() { return {}; }
};

// b following a: x -> b(a(x)).
RigidTransform compose(const RigidTransform& b, const RigidTransform& a);

struct IcpResult {
    RigidTransform transform; // cumulative, applied to the input mesh
    TriMesh refined;
    double rms = 0.0;                 // final RMS correspondence error
    std::vector<double> rms_history;  // per-iteration, before each solve
    size_t iterations = 0;
};

// Point-to-point ICP moving the mesh onto the target points. The surface is
// sampled once up front; each round pairs every target point with its nearest
// (transformed) sample, drops pairs beyond max_correspondence, and solves the
// closed-form least-squares rigid (or similarity) transform from the
// cross-covariance SVD. Throws AlignmentFailed when fewer than 3
// correspondences survive.
IcpResult icp_align(const TriMesh& mesh, const std::vector<Vec3>& target_points,
                    const IcpConfig& cfg = {});

// Closed-form least-squares (Umeyama) fit of dst ~ scale * R * src + t,
// exposed for the numeric-minimizer cross-check.
RigidTransform fit_rigid(const std::vector<Vec3>& src, const std::vector<Vec3>& dst,
                         bool with_scale);

} // namespace srk
