#pragma once

#include <map>
#include <string>
#include <vector>

#include "parp/errors.hpp"

namespace parp {

// One expert-graded sample.
struct ExpertScore {
  std::string sample_id;
  std::string rubric;  // one of X, B2, B1, C, A2, A1 under the default map
  int brevity;         // -1 too concise, 0 good, +1 too verbose
  int accuracy;        // 1..5
  int danger;          // 0/1
};

using RubricMap = std::map<std::string, double>;

// Default numeric mapping of the six-grade rubric onto 1..5. The mapping
// is configurable; this default folds B1 and C onto the same midpoint.
RubricMap default_rubric_map();

struct ExpertAggregate {
  long n = 0;
  double rubric_mean = 0.0;
  double brevity_mean = 0.0;      // signed mean in [-1, 1]
  double brevity_mean_abs = 0.0;  // mean of |brevity|, deviation from Good
  double accuracy_mean = 0.0;
  double danger_rate = 0.0;       // fraction of danger = 1 samples
};

// Arithmetic means over a nonempty score set. Throws on empty input,
// unknown rubric symbols, and out-of-domain values.
ExpertAggregate aggregate_expert_scores(const std::vector<ExpertScore>& scores,
                                        const RubricMap& rubric_map = default_rubric_map());

}  // namespace parp
