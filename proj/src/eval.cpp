#include "srk/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "srk/error.hpp"

namespace srk {

MetricKind metric_kind_from_string(const std::string& s) {
    if (s == "iou") return MetricKind::Iou;
    if (s == "cd") return MetricKind::Cd;
    if (s == "lfd") return MetricKind::Lfd;
    if (s == "pcr") return MetricKind::Pcr;
    throw InvalidInput("unknown metric kind '" + s + "' (expected iou|cd|lfd|pcr)");
}

const char* metric_kind_to_string(MetricKind k) {
    switch (k) {
        case MetricKind::Iou: return "iou";
        case MetricKind::Cd: return "cd";
        case MetricKind::Lfd: return "lfd";
        default: return "pcr";
    }
}

namespace {

bool higher_is_better(MetricKind k) { return k == MetricKind::Iou || k == MetricKind::Pcr; }

bool passes(MetricKind k, double score, double threshold) {
    return higher_is_better(k) ? score >= threshold : score <= threshold;
}

// Dense pred x gt score matrix restricted to same-category pairs; the
// expensive part, parallel over pairs. Cross-category slots hold NaN.
std::vector<double> score_matrix(const std::vector<PredictionRecord>& preds,
                                 const std::vector<GtRecord>& gts, MetricKind kind,
                                 const MetricParams& params) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> scores(preds.size() * gts.size(), nan);

    for (const auto& p : preds)
        if (p.mesh.empty()) throw InvalidInput("match_predictions: empty prediction mesh");
    for (const auto& g : gts) {
        if (kind != MetricKind::Pcr && g.mesh.empty())
            throw InvalidInput("match_predictions: empty ground-truth mesh");
        if (kind == MetricKind::Pcr && g.instance_points.empty())
            throw InvalidInput("match_predictions: ground truth has no instance points");
    }

    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    for (uint32_t i = 0; i < preds.size(); ++i)
        for (uint32_t j = 0; j < gts.size(); ++j)
            if (preds[i].category == gts[j].category) pairs.push_back({i, j});

#pragma omp parallel for schedule(dynamic)
    for (long long k = 0; k < (long long)pairs.size(); ++k) {
        auto [i, j] = pairs[k];
        double s = 0.0;
        switch (kind) {
            case MetricKind::Iou:
                s = voxel_iou(preds[i].mesh, gts[j].mesh, params.voxel);
                break;
            case MetricKind::Cd:
                s = chamfer(preds[i].mesh, gts[j].mesh, params.samples, params.seed);
                break;
            case MetricKind::Lfd:
                s = lightfield_distance(preds[i].mesh, gts[j].mesh, params.lfd);
                break;
            case MetricKind::Pcr:
                s = pcr(gts[j].instance_points, preds[i].mesh, params.omega);
                break;
        }
        scores[size_t(i) * gts.size() + j] = s;
    }
    return scores;
}

} // namespace

std::vector<MatchResult> match_predictions(const std::vector<PredictionRecord>& preds,
                                           const std::vector<GtRecord>& gts, MetricKind kind,
                                           double threshold, const MetricParams& params) {
    auto scores = score_matrix(preds, gts, kind, params);

    std::vector<size_t> order(preds.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return preds[a].confidence > preds[b].confidence;
    });

    std::vector<bool> gt_taken(gts.size(), false);
    std::vector<MatchResult> results;
    results.reserve(preds.size());
    for (size_t i : order) {
        int best_gt = -1;
        double best_score = 0.0;
        for (size_t j = 0; j < gts.size(); ++j) {
            if (gt_taken[j]) continue;
            double s = scores[i * gts.size() + j];
            if (std::isnan(s)) continue; // different category
            bool better = best_gt < 0 || (higher_is_better(kind) ? s > best_score
                                                                 : s < best_score);
            if (better) {
                best_gt = int(j);
                best_score = s;
            }
        }
        MatchResult r{i, std::nullopt, std::numeric_limits<double>::quiet_NaN()};
        if (best_gt >= 0) {
            r.score = best_score;
            if (passes(kind, best_score, threshold)) {
                r.gt_index = size_t(best_gt);
                gt_taken[size_t(best_gt)] = true;
            }
        }
        results.push_back(r);
    }
    return results;
}

double average_precision(const std::vector<bool>& match_flags, size_t n_gt) {
    if (n_gt == 0) return match_flags.empty() ? 1.0 : 0.0;
    size_t n = match_flags.size();
    std::vector<double> recall(n), precision(n);
    size_t tp = 0;
    for (size_t i = 0; i < n; ++i) {
        if (match_flags[i]) ++tp;
        recall[i] = double(tp) / double(n_gt);
        precision[i] = double(tp) / double(i + 1);
    }
    // monotone envelope from the right
    for (size_t i = n; i-- > 1;) precision[i - 1] = std::max(precision[i - 1], precision[i]);
    double ap = 0.0;
    double prev_recall = 0.0;
    for (size_t i = 0; i < n; ++i) {
        ap += (recall[i] - prev_recall) * precision[i];
        prev_recall = recall[i];
    }
    return ap;
}

double mean_ap(const std::map<std::string, double>& per_category) {
    if (per_category.empty()) throw InvalidInput("mean_ap: empty category map");
    double sum = 0.0;
    for (const auto& [cat, ap] : per_category) sum += ap;
    return sum / double(per_category.size());
}

double recognition_precision(const std::vector<PredictionRecord>& preds,
                             const std::vector<GtRecord>& gts, double iou_threshold,
                             const MetricParams& params) {
    if (!(iou_threshold > 0.0 && iou_threshold < 1.0))
        throw InvalidInput("recognition_precision: threshold must be in (0, 1)");
    if (preds.empty()) return 0.0;
    auto matches = match_predictions(preds, gts, MetricKind::Iou, iou_threshold, params);
    size_t tp = 0;
    for (const auto& m : matches)
        if (m.gt_index) ++tp;
    return double(tp) / double(preds.size());
}

EvalReport evaluate_scenes(const std::vector<SceneEvalInput>& scenes, MetricKind kind,
                           double threshold, double conf_floor, const MetricParams& params) {
    EvalReport report;
    report.scene_count = scenes.size();

    // per category: (confidence, tp) pooled across scenes, plus GT counts
    std::map<std::string, std::vector<std::pair<double, bool>>> flags;
    std::map<std::string, size_t> gt_counts;

    for (const auto& scene : scenes) {
        std::vector<PredictionRecord> kept;
        for (const auto& p : scene.preds) {
            if (p.confidence >= conf_floor) kept.push_back(p);
            else ++report.predictions_below_floor;
        }
        report.predictions_used += kept.size();
        for (const auto& g : scene.gts) gt_counts[g.category] += 1;

        auto matches = match_predictions(kept, scene.gts, kind, threshold, params);
        for (const auto& m : matches)
            flags[kept[m.pred_index].category].push_back(
                {kept[m.pred_index].confidence, m.gt_index.has_value()});
    }

    std::map<std::string, double> per_cat_ap;
    for (const auto& [cat, n_gt] : gt_counts)
        if (flags.find(cat) == flags.end()) flags[cat] = {};
    for (auto& [cat, cat_flags] : flags) {
        size_t n_gt = gt_counts.count(cat) ? gt_counts[cat] : 0;
        if (n_gt == 0 && cat_flags.empty()) continue;
        std::stable_sort(cat_flags.begin(), cat_flags.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        std::vector<bool> ordered;
        ordered.reserve(cat_flags.size());
        size_t tp = 0;
        for (const auto& [conf, is_tp] : cat_flags) {
            ordered.push_back(is_tp);
            if (is_tp) ++tp;
        }
        CategoryEval ce;
        ce.ap = average_precision(ordered, n_gt);
        ce.n_gt = n_gt;
        ce.n_pred = cat_flags.size();
        ce.true_positives = tp;
        report.per_category[cat] = ce;
        per_cat_ap[cat] = ce.ap;
    }
    report.map = per_cat_ap.empty() ? 0.0 : mean_ap(per_cat_ap);
    return report;
}

} // namespace srk
