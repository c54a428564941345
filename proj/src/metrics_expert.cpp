#include "parp/metrics_expert.hpp"

#include <cmath>

namespace parp {

RubricMap default_rubric_map() {
  return RubricMap{{"X", 1.0}, {"B2", 2.0}, {"B1", 3.0},
                   {"C", 3.0}, {"A2", 4.0}, {"A1", 5.0}};
}

ExpertAggregate aggregate_expert_scores(const std::vector<ExpertScore>& scores,
                                        const RubricMap& rubric_map) {
  if (scores.empty()) {
    throw ValidationError("expert score set must be nonempty");
  }
  ExpertAggregate agg;
  double rubric_sum = 0.0;
  double brevity_sum = 0.0;
  double brevity_abs_sum = 0.0;
  double accuracy_sum = 0.0;
  long danger_sum = 0;
  for (const ExpertScore& s : scores) {
    auto it = rubric_map.find(s.rubric);
    if (it == rubric_map.end()) {
      throw ValidationError("unknown rubric grade: '" + s.rubric + "'");
    }
    if (s.brevity < -1 || s.brevity > 1) {
      throw ValidationError("brevity must be -1, 0 or +1");
    }
    if (s.accuracy < 1 || s.accuracy > 5) {
      throw ValidationError("accuracy must be in 1..5");
    }
    if (s.danger != 0 && s.danger != 1) {
      throw ValidationError("danger must be 0 or 1");
    }
    rubric_sum += it->second;
    brevity_sum += s.brevity;
    brevity_abs_sum += std::abs(s.brevity);
    accuracy_sum += s.accuracy;
    danger_sum += s.danger;
  }
  const double n = static_cast<double>(scores.size());
  agg.n = static_cast<long>(scores.size());
  agg.rubric_mean = rubric_sum / n;
  agg.brevity_mean = brevity_sum / n;
  agg.brevity_mean_abs = brevity_abs_sum / n;
  agg.accuracy_mean = accuracy_sum / n;
  agg.danger_rate = static_cast<double>(danger_sum) / n;
  return agg;
}

}  // namespace parp
