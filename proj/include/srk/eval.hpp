#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "srk/mesh.hpp"
#include "srk/metrics.hpp"

namespace srk {

struct PredictionRecord {
    TriMesh mesh;
    double confidence = 0.0; // in [0, 1]
    std::string category;
};

struct GtRecord {
    TriMesh mesh;                     // annotated complete mesh
    std::vector<Vec3> instance_points; // observed instance point cloud
    std::string category;
};

enum class MetricKind { Iou, Cd, Lfd, Pcr };

MetricKind metric_kind_from_string(const std::string& s); // iou|cd|lfd|pcr
const char* metric_kind_to_string(MetricKind k);

struct MetricParams {
    double omega = 0.047;   // PCR threshold distance, meters
    double voxel = 0.047;   // IoU voxel size, meters
    size_t samples = 10000; // CD surface samples per mesh
    uint64_t seed = 0;      // CD sampling seed
    LfdConfig lfd;
};

struct MatchResult {
    size_t pred_index;             // into the preds array
    std::optional<size_t> gt_index; // claimed GT, when the claim passed
    double score;                  // score against the claimed/best candidate GT
};

// Greedy matching: predictions in descending confidence order (ties by input
// order) each claim the best-scoring unmatched GT of their category; the
// claim succeeds iff the score passes the threshold (>= for IoU/PCR, <= for
// CD/LFD). PCR scores the prediction mesh against the GT's instance points;
// the other kinds compare meshes. Results come back in processing order.
std::vector<MatchResult> match_predictions(const std::vector<PredictionRecord>& preds,
                                           const std::vector<GtRecord>& gts, MetricKind kind,
                                           double threshold, const MetricParams& params = {});

// All-point average precision over confidence-ordered TP/FP flags: area under
// the precision-recall curve after the monotone precision envelope. By
// convention 0 when n_gt = 0 and predictions exist, 1 when both are empty.
double average_precision(const std::vector<bool>& match_flags, size_t n_gt);

// Unweighted mean over the categories present in the map.
double mean_ap(const std::map<std::string, double>& per_category);

// TP / (TP + FP) under greedy voxel-IoU matching at the given threshold;
// 0 when there are no predictions.
double recognition_precision(const std::vector<PredictionRecord>& preds,
                             const std::vector<GtRecord>& gts, double iou_threshold,
                             const MetricParams& params = {});

struct SceneEvalInput {
    std::string name;
    std::vector<PredictionRecord> preds;
    std::vector<GtRecord> gts;
};

struct CategoryEval {
    double ap = 0.0;
    size_t n_gt = 0;
    size_t n_pred = 0;
    size_t true_positives = 0;
};

struct EvalReport {
    std::map<std::string, CategoryEval> per_category;
    double map = 0.0;
    size_t scene_count = 0;
    size_t predictions_used = 0;
    size_t predictions_below_floor = 0;
};

// Dataset-level scoring: per-scene greedy matching, per-category AP over the
// pooled confidence-ranked flags, mAP over the categories with any GT or
// prediction. Predictions below conf_floor are dropped first.
EvalReport evaluate_scenes(const std::vector<SceneEvalInput>& scenes, MetricKind kind,
                           double threshold, double conf_floor,
                           const MetricParams& params = {});

} // namespace srk
