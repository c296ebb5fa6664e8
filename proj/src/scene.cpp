#include "srk/scene.hpp"

#include <cmath>

#include "srk/error.hpp"

namespace srk {

void PointScene::validate() const {
    size_t n = points.size();
    if (offsets.size() != n || angles.size() != n || categories.size() != n)
        throw InvalidInput("scene: field lengths differ");
    if (!gt_instance_id.empty() && gt_instance_id.size() != n)
        throw InvalidInput("scene: gt_instance_id length differs");
    for (size_t i = 0; i < n; ++i) {
        if (!is_finite(points[i]) || !is_finite(offsets[i]))
            throw InvalidInput("scene: non-finite coordinate at point " + std::to_string(i));
        if (!std::isfinite(angles[i]) || angles[i] < -3.14159265358979323846 ||
            angles[i] >= 3.14159265358979323846)
            throw InvalidInput("scene: angle out of [-pi, pi) at point " + std::to_string(i));
    }
}

void LatentShapeDistribution::validate() const {
    if (sigma.size() != mu.size())
        throw InvalidInput("latent distribution: mu and sigma dimensions differ");
    for (double s : sigma)
        if (!(s >= 0.0)) throw InvalidInput("latent distribution: negative sigma component");
    for (double m : mu)
        if (!std::isfinite(m)) throw InvalidInput("latent distribution: non-finite mu component");
}

void InstanceProposal::validate(size_t scene_size) const {
    if (point_indices.empty()) throw InvalidInput("proposal: empty point index set");
    for (size_t i = 0; i < point_indices.size(); ++i) {
        if (point_indices[i] >= scene_size)
            throw InvalidInput("proposal: point index out of scene range");
        if (i > 0 && point_indices[i] <= point_indices[i - 1])
            throw InvalidInput("proposal: point indices must be sorted and duplicate-free");
    }
    if (!(confidence >= 0.0 && confidence <= 1.0))
        throw InvalidInput("proposal: confidence outside [0, 1]");
    latent.validate();
}

} // namespace srk
