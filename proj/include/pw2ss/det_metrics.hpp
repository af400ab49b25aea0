#pragma once

#include <string>
#include <vector>

#include "pw2ss/geometry.hpp"

namespace pw2ss {

struct Detection {
    BBox bbox;
    double score = 1.0;
    std::string image_id;
};

struct GroundTruth {
    BBox bbox;
    std::string image_id;
};

/// Outcome of greedy matching on a single image. Flags are indexed by the
/// position of each detection in the input list.
struct MatchResult {
    std::vector<bool> det_is_tp;
    std::vector<int> det_match; // matched gt index or -1
    std::vector<bool> gt_matched;
};

/// Greedy matching at one IoU threshold. All detections must belong to one
/// image. Detections are visited in descending score (ties by input order);
/// each takes the unmatched gt with the highest IoU >= iou_thr.
MatchResult match_detections(const std::vector<Detection>& dets,
                             const std::vector<GroundTruth>& gts, double iou_thr);

/// Same protocol with the center-hit criterion: a detection may match any
/// unmatched gt containing its box center (highest-IoU such gt preferred).
MatchResult match_detections_center(const std::vector<Detection>& dets,
                                    const std::vector<GroundTruth>& gts);

/// COCO 101-point interpolated AP at a single IoU threshold, across images.
/// No ground truth: 1.0 when there are also no detections, else 0.0.
double average_precision(const std::vector<Detection>& dets,
                         const std::vector<GroundTruth>& gts, double iou_thr);

struct CocoAp {
    double ap = 0.0;   // mean over IoU 0.50:0.05:0.95
    double ap50 = 0.0;
    double ap75 = 0.0;
};
CocoAp coco_ap(const std::vector<Detection>& dets, const std::vector<GroundTruth>& gts);

/// Recall of the top-max_dets detections per image, averaged over the 10
/// COCO IoU thresholds.
double average_recall(const std::vector<Detection>& dets,
                      const std::vector<GroundTruth>& gts, int max_dets = 100);

struct CenterMetric {
    double recall = 0.0;
    double ap = 0.0;
};
/// Detection quality under the box-center-inside-gt criterion.
CenterMetric center_metric(const std::vector<Detection>& dets,
                           const std::vector<GroundTruth>& gts);

/// Fraction of exact class matches. Throws LengthMismatch.
double top1_accuracy(const std::vector<int>& preds, const std::vector<int>& gts);

/// The 10 COCO IoU thresholds 0.50, 0.55, ..., 0.95.
const std::vector<double>& coco_iou_thresholds();

/// Precision-recall points (recall, precision) over score-ordered
/// detection prefixes at one IoU threshold; used for plot emission.
std::vector<std::pair<double, double>> pr_curve(const std::vector<Detection>& dets,
                                                const std::vector<GroundTruth>& gts,
                                                double iou_thr);

} // namespace pw2ss
