#include "parp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace parp {

namespace {

void check_unit_interval(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    throw ValidationError(std::string(what) + " must be in [0,1]");
  }
}

}  // namespace

ScoredBox::ScoredBox(BBoxXYXY b, double obj, std::vector<double> conf)
    : box(b), objectness(obj), class_conf(std::move(conf)) {
  check_unit_interval(objectness, "objectness");
  for (double c : class_conf) {
    check_unit_interval(c, "class confidence");
  }
}

double ScoredBox::score() const {
  double max_conf = 0.0;
  for (double c : class_conf) {
    max_conf = std::max(max_conf, c);
  }
  return objectness * max_conf;
}

double iou(const BBoxXYXY& a, const BBoxXYXY& b) {
  const double ix = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double iy = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (ix <= 0.0 || iy <= 0.0) {
    return 0.0;
  }
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  return inter / uni;
}

std::vector<ScoredBox> nms_multilabel(const std::vector<ScoredBox>& boxes,
                                      double conf_threshold,
                                      double iou_threshold) {
  check_unit_interval(conf_threshold, "conf_threshold");
  check_unit_interval(iou_threshold, "iou_threshold");

  std::vector<std::size_t> order;
  order.reserve(boxes.size());
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    if (boxes[i].score() >= conf_threshold) {
      order.push_back(i);
    }
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return boxes[a].score() > boxes[b].score();
  });

  std::vector<ScoredBox> kept;
  for (std::size_t idx : order) {
    const ScoredBox& candidate = boxes[idx];
    bool suppressed = false;
    for (const ScoredBox& k : kept) {
      if (iou(candidate.box, k.box) > iou_threshold) {
        suppressed = true;
        break;
      }
    }
    if (suppressed) {
      continue;
    }
    ScoredBox survivor = candidate;
    for (double& c : survivor.class_conf) {
      if (survivor.objectness * c < conf_threshold) {
        c = 0.0;
      }
    }
    kept.push_back(std::move(survivor));
  }
  return kept;
}

}  // namespace parp
