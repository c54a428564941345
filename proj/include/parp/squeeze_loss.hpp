#pragma once

#include <cstdint>
#include <vector>

#include "parp/bbox.hpp"

namespace parp {

// One row of a single-label annotation: [class, bbox].
struct SingleLabelRow {
  int class_index;
  BBoxXYWH box;
};

using ClassVector = std::vector<std::uint8_t>;  // multi-hot, entries in {0,1}

// One row of the squeezed multi-label annotation: [c_i, bbox_i] where c_i
// is a multi-hot vector of length C with at least one bit set.
struct MultiLabelBox {
  ClassVector classes;
  BBoxXYWH box;

  int active_count() const;
  std::vector<int> active_classes() const;
};

// Merges rows with identical coordinates into one multi-hot row. The class
// vector of each output is the union of the merged rows' classes; output
// order follows first appearance. Coordinate equality is exact by default;
// tau > 0 matches a row to the first group whose representative box agrees
// on all four coordinates within tau.
std::vector<MultiLabelBox> label_squeeze(const std::vector<SingleLabelRow>& rows,
                                         int num_classes, double tau = 0.0);

// Weights for the three loss components.
struct LossWeights {
  double cls;
  double obj;
  double box;
};

inline constexpr LossWeights kDefaultLossWeights{0.5, 1.0, 0.05};

struct LossBreakdown {
  double cls;
  double obj;
  double box;
  double total;
};

// Predicted probabilities are clamped to [kProbEpsilon, 1 - kProbEpsilon]
// before taking logs.
inline constexpr double kProbEpsilon = 1e-7;

// Sum over instances and classes of binary cross-entropy between multi-hot
// targets and predicted confidence vectors.
double classification_loss(const std::vector<ClassVector>& targets,
                           const std::vector<std::vector<double>>& predictions);

// Sum of binary cross-entropy terms between presence targets in {0,1} and
// presence scores.
double objectness_loss(const std::vector<std::uint8_t>& targets,
                       const std::vector<double>& scores);

// Mean over boxes of the mean squared coordinate error (four coordinates
// per box). Zero iff the lists are identical.
double box_loss(const std::vector<BBoxXYWH>& targets,
                const std::vector<BBoxXYWH>& predictions);

// L = w.cls * cls + w.obj * obj + w.box * box. Components and weights must
// be nonnegative.
LossBreakdown total_loss(double cls, double obj, double box,
                         const LossWeights& weights = kDefaultLossWeights);

}  // namespace parp
