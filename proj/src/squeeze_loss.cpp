#include "parp/squeeze_loss.hpp"

#include <algorithm>
#include <cmath>

namespace parp {

int MultiLabelBox::active_count() const {
  int n = 0;
  for (std::uint8_t bit : classes) {
    n += bit ? 1 : 0;
  }
  return n;
}

std::vector<int> MultiLabelBox::active_classes() const {
  std::vector<int> out;
  for (int j = 0; j < static_cast<int>(classes.size()); ++j) {
    if (classes[j]) {
      out.push_back(j);
    }
  }
  return out;
}

std::vector<MultiLabelBox> label_squeeze(const std::vector<SingleLabelRow>& rows,
                                         int num_classes, double tau) {
  if (num_classes <= 0) {
    throw ValidationError("num_classes must be positive");
  }
  if (tau < 0.0 || !std::isfinite(tau)) {
    throw ValidationError("coordinate tolerance must be finite and >= 0");
  }
  std::vector<MultiLabelBox> out;
  for (const SingleLabelRow& row : rows) {
    if (row.class_index < 0 || row.class_index >= num_classes) {
      throw ValidationError("class index out of range: " +
                            std::to_string(row.class_index));
    }
    auto matches = [&](const BBoxXYWH& a, const BBoxXYWH& b) {
      if (tau == 0.0) {
        return a == b;
      }
      return std::abs(a.x - b.x) <= tau && std::abs(a.y - b.y) <= tau &&
             std::abs(a.w - b.w) <= tau && std::abs(a.h - b.h) <= tau;
    };
    auto group = std::find_if(out.begin(), out.end(), [&](const MultiLabelBox& g) {
      return matches(g.box, row.box);
    });
    if (group == out.end()) {
      MultiLabelBox fresh{ClassVector(num_classes, 0), row.box};
      fresh.classes[row.class_index] = 1;
      out.push_back(std::move(fresh));
    } else {
      group->classes[row.class_index] = 1;
    }
  }
  return out;
}

namespace {

double clamp_prob(double p) {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
    throw ValidationError("predicted probabilities must be in [0,1]");
  }
  return std::clamp(p, kProbEpsilon, 1.0 - kProbEpsilon);
}

double bce_term(double target, double p) {
  p = clamp_prob(p);
  return -(target * std::log(p) + (1.0 - target) * std::log(1.0 - p));
}

}  // namespace

double classification_loss(const std::vector<ClassVector>& targets,
                           const std::vector<std::vector<double>>& predictions) {
  if (targets.size() != predictions.size()) {
    throw ValidationError("classification loss: instance count mismatch");
  }
  double loss = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i].size() != predictions[i].size()) {
      throw ValidationError("classification loss: class vector length mismatch");
    }
    for (std::size_t j = 0; j < targets[i].size(); ++j) {
      if (targets[i][j] > 1) {
        throw ValidationError("class vector entries must be 0 or 1");
      }
      loss += bce_term(static_cast<double>(targets[i][j]), predictions[i][j]);
    }
  }
  return loss;
}

double objectness_loss(const std::vector<std::uint8_t>& targets,
                       const std::vector<double>& scores) {
  if (targets.size() != scores.size()) {
    throw ValidationError("objectness loss: length mismatch");
  }
  double loss = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] > 1) {
      throw ValidationError("presence targets must be 0 or 1");
    }
    loss += bce_term(static_cast<double>(targets[i]), scores[i]);
  }
  return loss;
}

double box_loss(const std::vector<BBoxXYWH>& targets,
                const std::vector<BBoxXYWH>& predictions) {
  if (targets.size() != predictions.size()) {
    throw ValidationError("box loss: length mismatch");
  }
  if (targets.empty()) {
    return 0.0;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const BBoxXYWH& t = targets[i];
    const BBoxXYWH& p = predictions[i];
    const double dx = t.x - p.x;
    const double dy = t.y - p.y;
    const double dw = t.w - p.w;
    const double dh = t.h - p.h;
    sum += (dx * dx + dy * dy + dw * dw + dh * dh) / 4.0;
  }
  return sum / static_cast<double>(targets.size());
}

LossBreakdown total_loss(double cls, double obj, double box,
                         const LossWeights& weights) {
  if (weights.cls < 0.0 || weights.obj < 0.0 || weights.box < 0.0) {
    throw ValidationError("loss weights must be nonnegative");
  }
  if (cls < 0.0 || obj < 0.0 || box < 0.0) {
    throw ValidationError("loss components must be nonnegative");
  }
  return LossBreakdown{cls, obj, box,
                       weights.cls * cls + weights.obj * obj + weights.box * box};
}

}  // namespace parp
