#pragma once

#include <string>
#include <vector>

#include "parp/bbox.hpp"
#include "parp/geometry.hpp"

namespace parp {

// Ground-truth lesion instance: one box carrying its full set of classes.
// For per-class matching it expands to one (box, class) instance per
// active class.
struct MultiLabelGtBox {
  BBoxXYXY box;
  std::vector<int> classes;
};

// One evaluated image: its ground truth and the detector's predictions.
struct DetectionEvalImage {
  std::vector<MultiLabelGtBox> gt;
  std::vector<ScoredBox> predictions;
};

struct ClassDetectionEval {
  int class_index = -1;
  long gt_count = 0;
  long tp = 0;  // at the confidence operating point
  long fp = 0;
  double precision = 0.0;
  double recall = 0.0;
  double ap = 0.0;  // area under the all-point interpolated PR curve
};

struct DetectionThresholdEval {
  double iou_threshold = 0.0;
  std::vector<ClassDetectionEval> per_class;  // classes present in GT only
  double mean_precision = 0.0;
  double mean_recall = 0.0;
  double map = 0.0;  // unweighted mean AP over classes present in GT
};

struct DetectionEvalResult {
  std::vector<DetectionThresholdEval> thresholds;
  std::vector<std::string> warnings;  // e.g. classes absent from GT
};

// Per-class greedy matching of predictions (descending score = objectness
// x class confidence) against unmatched same-class GT boxes at
// IoU >= threshold. Precision/recall are reported at conf_threshold; AP
// integrates the full all-point interpolated PR curve.
DetectionEvalResult detection_eval(const std::vector<DetectionEvalImage>& images,
                                   int num_classes,
                                   const std::vector<double>& iou_thresholds = {0.5, 0.95},
                                   double conf_threshold = 0.35);

}  // namespace parp
