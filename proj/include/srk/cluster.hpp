#pragma once

#include <vector>

#include "srk/scene.hpp"

namespace srk {

struct ClusterConfig {
    std::vector<double> radii{0.01, 0.03, 0.05}; // meters, multi-scale
    size_t min_points = 100;
    double dedup_iou = 0.9; // in (0, 1]
    bool dual_set = false;  // additionally cluster on original coordinates
    bool arithmetic_angle_mean = false; // literal arithmetic mean instead of circular

    void validate() const;
};

// Connected components of the radius graph over offset-shifted coordinates
// p + o, with edges only between points sharing a segmentation category.
// Points whose category maps to none are excluded. With dual_set the same
// procedure also runs on the original coordinates and both proposal sets are
// returned. Components below min_points are dropped. Proposals come back with
// sorted point indices, the heuristic confidence |P| / max |P|, the category
// mapped through `labels`, and boxes/latents unfilled.
std::vector<InstanceProposal> cluster_scene(const PointScene& scene, double radius,
                                            size_t min_points, bool dual_set,
                                            const LabelSystem& labels = default_label_system());

// Union of cluster_scene over cfg.radii followed by dedup_proposals, then
// initial boxes filled in via proposal_initial_box.
std::vector<InstanceProposal> multi_scale_cluster(const PointScene& scene,
                                                  const ClusterConfig& cfg,
                                                  const LabelSystem& labels = default_label_system());

// Point-set IoU between two sorted index vectors.
double point_set_iou(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);

// Keeps proposals greedily by descending point count (ties: smallest first
// index); a proposal is dropped when its point-set IoU with any kept proposal
// reaches iou_threshold.
std::vector<InstanceProposal> dedup_proposals(std::vector<InstanceProposal> props,
                                              double iou_threshold);

// Initial 7-DoF box: center = mean(p + o), rotation = circular mean of the
// per-point angles (arithmetic mean under the config flag), scale = extent of
// the recentered points after rotation by the negative mean angle, floored at
// kMinBoxScale.
OrientedBox7DoF proposal_initial_box(const PointScene& scene, const InstanceProposal& prop,
                                     bool arithmetic_angle_mean = false);

} // namespace srk
