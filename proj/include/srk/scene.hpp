#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srk/box.hpp"
#include "srk/labels.hpp"
#include "srk/vec3.hpp"

namespace srk {

// Observed point scene with per-point predictions: category (argmax of the
// segmentation logits), offset toward the instance center, and rotation angle
// about +z. All arrays share one length; gt_instance_id is an optional
// fixture channel.
struct PointScene {
    std::vector<Vec3> points;
    std::vector<Vec3> offsets;
    std::vector<double> angles;          // radians in [-pi, pi)
    std::vector<CategoryId> categories;  // segmentation ids
    std::vector<uint16_t> gt_instance_id;
    std::string label_system = "srk25";

    size_t size() const { return points.size(); }

    // Enforces equal lengths, finite coordinates, and wrapped angles.
    void validate() const;
};

struct LatentShapeDistribution {
    std::vector<double> mu;
    std::vector<double> sigma; // same dimension as mu, componentwise >= 0

    size_t dim() const { return mu.size(); }
    void validate() const;
};

// A clustered point subset hypothesized to be one instance, plus the
// proposal-level predictions consumed by reconstruction. Boxes/latents may be
// unfilled right after clustering.
struct InstanceProposal {
    std::vector<uint32_t> point_indices; // sorted, duplicate-free
    double confidence = 0.0;             // in [0, 1]
    OrientedBox7DoF initial_box;
    BoxResidual residual;
    LatentShapeDistribution latent;
    std::string category; // reconstruction category name

    void validate(size_t scene_size) const;
};

} // namespace srk
