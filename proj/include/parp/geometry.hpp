#pragma once

#include <vector>

#include "parp/bbox.hpp"

namespace parp {

// Lesion detector output row: a box with an objectness score and one
// confidence per lesion class.
struct ScoredBox {
  BBoxXYXY box;
  double objectness;                // in [0,1]
  std::vector<double> class_conf;   // in [0,1]^C

  ScoredBox(BBoxXYXY b, double obj, std::vector<double> conf);

  // objectness x max class confidence; the whole-box score used by NMS.
  double score() const;
};

// Intersection area over union area. Symmetric, 1 for identical boxes,
// 0 for disjoint interiors.
double iou(const BBoxXYXY& a, const BBoxXYXY& b);

// Multi-label non-maximum suppression:
//   1. drop boxes whose whole-box score is below conf_threshold;
//   2. greedy descending-score suppression of boxes with IoU strictly
//      above iou_threshold against an already-kept box (score ties broken
//      by lower input index);
//   3. zero class entries of survivors whose objectness x confidence is
//      below conf_threshold.
// The kept set is pairwise IoU <= iou_threshold and each survivor retains
// at least one class.
std::vector<ScoredBox> nms_multilabel(const std::vector<ScoredBox>& boxes,
                                      double conf_threshold = 0.35,
                                      double iou_threshold = 0.45);

}  // namespace parp
