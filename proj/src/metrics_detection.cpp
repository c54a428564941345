#include "parp/metrics_detection.hpp"

#include <algorithm>
#include <cmath>

namespace parp {

namespace {

struct ClassPrediction {
  double score;
  std::size_t image;
  std::size_t pred_index;
  const BBoxXYXY* box;
};

// Cumulative match flags in descending score order for one class at one
// IoU threshold. Greedy: each prediction takes the unmatched GT box of its
// image with the highest IoU, and counts as TP when that IoU reaches the
// threshold.
std::vector<std::pair<double, bool>> match_class(
    const std::vector<DetectionEvalImage>& images,
    const std::vector<ClassPrediction>& preds,
    const std::vector<std::vector<const BBoxXYXY*>>& gt_boxes,
    double iou_threshold) {
  std::vector<std::vector<bool>> gt_used(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    gt_used[i].assign(gt_boxes[i].size(), false);
  }
  std::vector<std::pair<double, bool>> outcomes;
  outcomes.reserve(preds.size());
  for (const ClassPrediction& p : preds) {
    const auto& candidates = gt_boxes[p.image];
    int best = -1;
    double best_iou = 0.0;
    for (std::size_t g = 0; g < candidates.size(); ++g) {
      if (gt_used[p.image][g]) {
        continue;
      }
      double v = iou(*p.box, *candidates[g]);
      if (v > best_iou) {
        best_iou = v;
        best = static_cast<int>(g);
      }
    }
    const bool tp = best >= 0 && best_iou >= iou_threshold;
    if (tp) {
      gt_used[p.image][best] = true;
    }
    outcomes.emplace_back(p.score, tp);
  }
  return outcomes;
}

// Area under the precision-recall curve with right-max interpolation over
// every operating point.
double average_precision(const std::vector<std::pair<double, bool>>& outcomes,
                         long gt_count) {
  std::vector<double> precision;
  std::vector<double> recall;
  long tp = 0;
  long fp = 0;
  for (const auto& [score, is_tp] : outcomes) {
    is_tp ? ++tp : ++fp;
    precision.push_back(static_cast<double>(tp) / static_cast<double>(tp + fp));
    recall.push_back(static_cast<double>(tp) / static_cast<double>(gt_count));
  }
  double ap = 0.0;
  double max_precision = 0.0;
  for (std::size_t i = precision.size(); i-- > 0;) {
    max_precision = std::max(max_precision, precision[i]);
    const double prev_recall = (i == 0) ? 0.0 : recall[i - 1];
    ap += (recall[i] - prev_recall) * max_precision;
  }
  return ap;
}

}  // namespace

DetectionEvalResult detection_eval(const std::vector<DetectionEvalImage>& images,
                                   int num_classes,
                                   const std::vector<double>& iou_thresholds,
                                   double conf_threshold) {
  if (num_classes <= 0) {
    throw ValidationError("num_classes must be positive");
  }
  for (double t : iou_thresholds) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw ValidationError("IoU thresholds must be in [0,1]");
    }
  }
  if (!(conf_threshold >= 0.0 && conf_threshold <= 1.0)) {
    throw ValidationError("confidence threshold must be in [0,1]");
  }

  // Expand per class: GT instances and scored predictions.
  std::vector<std::vector<std::vector<const BBoxXYXY*>>> gt_by_class(num_classes);
  std::vector<std::vector<ClassPrediction>> preds_by_class(num_classes);
  std::vector<long> gt_count(num_classes, 0);
  for (int c = 0; c < num_classes; ++c) {
    gt_by_class[c].resize(images.size());
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (const MultiLabelGtBox& gt : images[i].gt) {
      for (int c : gt.classes) {
        if (c < 0 || c >= num_classes) {
          throw ValidationError("ground-truth class index out of range");
        }
        gt_by_class[c][i].push_back(&gt.box);
        ++gt_count[c];
      }
    }
    for (std::size_t p = 0; p < images[i].predictions.size(); ++p) {
      const ScoredBox& pred = images[i].predictions[p];
      if (static_cast<int>(pred.class_conf.size()) != num_classes) {
        throw ValidationError("prediction confidence vector length mismatch");
      }
      for (int c = 0; c < num_classes; ++c) {
        const double score = pred.objectness * pred.class_conf[c];
        if (score > 0.0) {
          preds_by_class[c].push_back(ClassPrediction{score, i, p, &pred.box});
        }
      }
    }
  }
  for (int c = 0; c < num_classes; ++c) {
    std::stable_sort(preds_by_class[c].begin(), preds_by_class[c].end(),
                     [](const ClassPrediction& a, const ClassPrediction& b) {
                       return a.score > b.score;
                     });
  }

  DetectionEvalResult result;
  for (int c = 0; c < num_classes; ++c) {
    if (gt_count[c] == 0) {
      result.warnings.push_back("class " + std::to_string(c) +
                                " has no ground-truth instances; excluded");
    }
  }

  for (double threshold : iou_thresholds) {
    DetectionThresholdEval eval;
    eval.iou_threshold = threshold;
    double p_sum = 0.0, r_sum = 0.0, ap_sum = 0.0;
    for (int c = 0; c < num_classes; ++c) {
      if (gt_count[c] == 0) {
        continue;
      }
      const auto outcomes =
          match_class(images, preds_by_class[c], gt_by_class[c], threshold);
      ClassDetectionEval ce;
      ce.class_index = c;
      ce.gt_count = gt_count[c];
      for (const auto& [score, is_tp] : outcomes) {
        if (score >= conf_threshold) {
          is_tp ? ++ce.tp : ++ce.fp;
        }
      }
      ce.precision = (ce.tp + ce.fp) == 0
                         ? 0.0
                         : static_cast<double>(ce.tp) / (ce.tp + ce.fp);
      ce.recall = static_cast<double>(ce.tp) / static_cast<double>(ce.gt_count);
      ce.ap = average_precision(outcomes, gt_count[c]);
      p_sum += ce.precision;
      r_sum += ce.recall;
      ap_sum += ce.ap;
      eval.per_class.push_back(ce);
    }
    const double n = static_cast<double>(eval.per_class.size());
    if (n > 0) {
      eval.mean_precision = p_sum / n;
      eval.mean_recall = r_sum / n;
      eval.map = ap_sum / n;
    }
    result.thresholds.push_back(std::move(eval));
  }
  return result;
}

}  // namespace parp
