#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "parp/metrics_ce.hpp"
#include "parp/metrics_detection.hpp"
#include "parp/metrics_expert.hpp"
#include "parp/metrics_region.hpp"
#include "parp/vocab.hpp"

namespace parp {

// Uniform envelope for every evaluation output: the metric values plus the
// exact configuration they were computed under.
nlohmann::json make_metric_report(const std::string& kind,
                                  nlohmann::json config,
                                  nlohmann::json results,
                                  const std::vector<std::string>& warnings);

nlohmann::json ce_result_to_json(const CeResult& result);
nlohmann::json detection_eval_to_json(const DetectionEvalResult& result,
                                      const LesionTaxonomy& taxonomy);
nlohmann::json region_eval_to_json(const RegionEvalResult& result,
                                   const RegionVocabulary& vocab);
nlohmann::json expert_aggregate_to_json(const ExpertAggregate& aggregate);

}  // namespace parp
