#include "pw2ss/det_metrics.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "pw2ss/errors.hpp"

namespace pw2ss {
namespace {

std::vector<std::size_t> score_order(const std::vector<Detection>& dets) {
    std::vector<std::size_t> order(dets.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return dets[a].score > dets[b].score;
    });
    return order;
}

// Shared greedy matcher. qualifies(iou, det, gt) decides TP eligibility;
// among qualifying unmatched gts the one with the highest IoU wins, ties by
// lowest gt index.
template <typename Qualifies>
MatchResult match_greedy(const std::vector<Detection>& dets,
                         const std::vector<GroundTruth>& gts, Qualifies qualifies) {
    MatchResult r;
    r.det_is_tp.assign(dets.size(), false);
    r.det_match.assign(dets.size(), -1);
    r.gt_matched.assign(gts.size(), false);
    for (std::size_t di : score_order(dets)) {
        int best_gt = -1;
        double best_iou = -1.0;
        for (std::size_t gi = 0; gi < gts.size(); ++gi) {
            if (r.gt_matched[gi]) continue;
            if (!qualifies(dets[di], gts[gi])) continue;
            const double v = iou(dets[di].bbox, gts[gi].bbox);
            if (v > best_iou) {
                best_iou = v;
                best_gt = static_cast<int>(gi);
            }
        }
        if (best_gt >= 0) {
            r.det_is_tp[di] = true;
            r.det_match[di] = best_gt;
            r.gt_matched[static_cast<std::size_t>(best_gt)] = true;
        }
    }
    return r;
}

struct PooledFlags {
    // TP flag per detection, in global descending-score order
    std::vector<bool> tp;
    std::size_t n_gt = 0;
};

// Matches per image (optionally keeping only the top max_dets detections of
// each image) and pools TP flags in global score order.
template <typename Matcher>
PooledFlags pool_matches(const std::vector<Detection>& dets,
                         const std::vector<GroundTruth>& gts, Matcher matcher,
                         int max_dets = -1) {
    std::map<std::string, std::vector<std::size_t>> dets_by_image, gts_by_image;
    for (std::size_t i = 0; i < dets.size(); ++i) dets_by_image[dets[i].image_id].push_back(i);
    for (std::size_t i = 0; i < gts.size(); ++i) gts_by_image[gts[i].image_id].push_back(i);

    std::vector<bool> tp_by_det(dets.size(), false);
    std::vector<bool> kept(dets.size(), true);
    for (auto& [image_id, det_idx] : dets_by_image) {
        std::vector<Detection> img_dets;
        std::vector<std::size_t> img_src;
        if (max_dets >= 0) {
            // top max_dets by score, ties by input order
            std::stable_sort(det_idx.begin(), det_idx.end(), [&](std::size_t a, std::size_t b) {
                return dets[a].score > dets[b].score;
            });
            if (det_idx.size() > static_cast<std::size_t>(max_dets))
                det_idx.resize(static_cast<std::size_t>(max_dets));
            std::sort(det_idx.begin(), det_idx.end());
        }
        for (std::size_t i : det_idx) {
            img_dets.push_back(dets[i]);
            img_src.push_back(i);
        }
        std::vector<GroundTruth> img_gts;
        auto git = gts_by_image.find(image_id);
        if (git != gts_by_image.end())
            for (std::size_t i : git->second) img_gts.push_back(gts[i]);
        MatchResult m = matcher(img_dets, img_gts);
        for (std::size_t k = 0; k < img_src.size(); ++k) tp_by_det[img_src[k]] = m.det_is_tp[k];
        if (max_dets >= 0) {
            std::vector<bool> in_top(dets.size(), false);
            for (std::size_t i : det_idx) in_top[i] = true;
            for (std::size_t i = 0; i < dets.size(); ++i)
                if (dets[i].image_id == image_id && !in_top[i]) kept[i] = false;
        }
    }

    PooledFlags out;
    out.n_gt = gts.size();
    for (std::size_t i : score_order(dets))
        if (kept[i]) out.tp.push_back(tp_by_det[i]);
    return out;
}

double interpolated_ap(const PooledFlags& flags) {
    if (flags.n_gt == 0) return flags.tp.empty() ? 1.0 : 0.0;
    std::vector<double> precision, recall;
    std::size_t tp = 0, fp = 0;
    for (bool is_tp : flags.tp) {
        is_tp ? ++tp : ++fp;
        precision.push_back(static_cast<double>(tp) / static_cast<double>(tp + fp));
        recall.push_back(static_cast<double>(tp) / static_cast<double>(flags.n_gt));
    }
    // precision envelope: max precision at or beyond each prefix
    for (std::size_t i = precision.size(); i-- > 1;)
        precision[i - 1] = std::max(precision[i - 1], precision[i]);

    double sum = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double r = static_cast<double>(i) / 100.0;
        double p = 0.0;
        for (std::size_t k = 0; k < recall.size(); ++k) {
            if (recall[k] >= r) {
                p = precision[k];
                break;
            }
        }
        sum += p;
    }
    return sum / 101.0;
}

MatchResult match_iou_thr(const std::vector<Detection>& d, const std::vector<GroundTruth>& g,
                          double thr) {
    return match_greedy(d, g, [thr](const Detection& det, const GroundTruth& gt) {
        return iou(det.bbox, gt.bbox) >= thr;
    });
}

} // namespace

const std::vector<double>& coco_iou_thresholds() {
    static const std::vector<double> thrs = [] {
        std::vector<double> t;
        for (int i = 0; i < 10; ++i) t.push_back(0.50 + 0.05 * i);
        return t;
    }();
    return thrs;
}

MatchResult match_detections(const std::vector<Detection>& dets,
                             const std::vector<GroundTruth>& gts, double iou_thr) {
    return match_iou_thr(dets, gts, iou_thr);
}

MatchResult match_detections_center(const std::vector<Detection>& dets,
                                    const std::vector<GroundTruth>& gts) {
    return match_greedy(dets, gts, [](const Detection& det, const GroundTruth& gt) {
        return center_hit(det.bbox, gt.bbox);
    });
}

double average_precision(const std::vector<Detection>& dets,
                         const std::vector<GroundTruth>& gts, double iou_thr) {
    auto flags = pool_matches(dets, gts, [iou_thr](const auto& d, const auto& g) {
        return match_iou_thr(d, g, iou_thr);
    });
    return interpolated_ap(flags);
}

CocoAp coco_ap(const std::vector<Detection>& dets, const std::vector<GroundTruth>& gts) {
    CocoAp out;
    double sum = 0.0;
    for (double thr : coco_iou_thresholds()) {
        const double ap = average_precision(dets, gts, thr);
        sum += ap;
        if (thr == 0.50) out.ap50 = ap;
        if (thr == 0.75) out.ap75 = ap;
    }
    out.ap = sum / static_cast<double>(coco_iou_thresholds().size());
    return out;
}

double average_recall(const std::vector<Detection>& dets,
                      const std::vector<GroundTruth>& gts, int max_dets) {
    if (gts.empty()) return 1.0; // vacuous
    double sum = 0.0;
    for (double thr : coco_iou_thresholds()) {
        auto flags = pool_matches(
            dets, gts,
            [thr](const auto& d, const auto& g) { return match_iou_thr(d, g, thr); },
            max_dets);
        std::size_t tp = 0;
        for (bool t : flags.tp) tp += t ? 1u : 0u;
        sum += static_cast<double>(tp) / static_cast<double>(gts.size());
    }
    return sum / static_cast<double>(coco_iou_thresholds().size());
}

CenterMetric center_metric(const std::vector<Detection>& dets,
                           const std::vector<GroundTruth>& gts) {
    auto flags = pool_matches(dets, gts, [](const auto& d, const auto& g) {
        return match_detections_center(d, g);
    });
    CenterMetric out;
    std::size_t tp = 0;
    for (bool t : flags.tp) tp += t ? 1u : 0u;
    out.recall = gts.empty() ? 1.0 : static_cast<double>(tp) / static_cast<double>(gts.size());
    out.ap = interpolated_ap(flags);
    return out;
}

double top1_accuracy(const std::vector<int>& preds, const std::vector<int>& gts) {
    if (preds.size() != gts.size())
        throw LengthMismatch("top1_accuracy: " + std::to_string(preds.size()) + " vs " +
                             std::to_string(gts.size()) + " labels");
    if (preds.empty()) throw LengthMismatch("top1_accuracy: empty inputs");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < preds.size(); ++i) hits += preds[i] == gts[i] ? 1u : 0u;
    return static_cast<double>(hits) / static_cast<double>(preds.size());
}

std::vector<std::pair<double, double>> pr_curve(const std::vector<Detection>& dets,
                                                const std::vector<GroundTruth>& gts,
                                                double iou_thr) {
    auto flags = pool_matches(dets, gts, [iou_thr](const auto& d, const auto& g) {
        return match_iou_thr(d, g, iou_thr);
    });
    std::vector<std::pair<double, double>> points;
    std::size_t tp = 0, fp = 0;
    for (bool is_tp : flags.tp) {
        is_tp ? ++tp : ++fp;
        const double prec = static_cast<double>(tp) / static_cast<double>(tp + fp);
        const double rec =
            flags.n_gt == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(flags.n_gt);
        points.emplace_back(rec, prec);
    }
    return points;
}

} // namespace pw2ss
