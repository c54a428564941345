#include "parp/report.hpp"

#include "parp/version.hpp"

namespace parp {

using nlohmann::json;

json make_metric_report(const std::string& kind, json config, json results,
                        const std::vector<std::string>& warnings) {
  return json{{"schema_version", 1},
              {"kind", kind},
              {"tool", kToolName},
              {"version", kToolVersion},
              {"config", std::move(config)},
              {"results", std::move(results)},
              {"warnings", warnings}};
}

json ce_result_to_json(const CeResult& result) {
  return json{{"precision", result.precision},
              {"recall", result.recall},
              {"f1", result.f1},
              {"precision_undefined", result.precision_undefined},
              {"recall_undefined", result.recall_undefined},
              {"f1_undefined", result.f1_undefined},
              {"averaging", to_string(result.mode)}};
}

json detection_eval_to_json(const DetectionEvalResult& result,
                            const LesionTaxonomy& taxonomy) {
  json thresholds = json::array();
  for (const DetectionThresholdEval& t : result.thresholds) {
    json per_class = json::array();
    for (const ClassDetectionEval& c : t.per_class) {
      per_class.push_back(json{{"class", taxonomy.name(c.class_index)},
                               {"gt_count", c.gt_count},
                               {"tp", c.tp},
                               {"fp", c.fp},
                               {"precision", c.precision},
                               {"recall", c.recall},
                               {"ap", c.ap}});
    }
    thresholds.push_back(json{{"iou_threshold", t.iou_threshold},
                              {"per_class", per_class},
                              {"mean_precision", t.mean_precision},
                              {"mean_recall", t.mean_recall},
                              {"map", t.map}});
  }
  return json{{"thresholds", thresholds}};
}

json region_eval_to_json(const RegionEvalResult& result,
                         const RegionVocabulary& vocab) {
  json per_region = json::array();
  for (const RegionEvalPerRegion& r : result.per_region) {
    per_region.push_back(json{{"region", vocab.name(r.region_index)},
                              {"gt_images", r.gt_images},
                              {"micro_iou", r.micro_iou}});
  }
  return json{{"per_region", per_region},
              {"overall_avg_iou", result.overall_avg_iou},
              {"mean_detected_regions_per_image",
               result.mean_detected_regions_per_image}};
}

json expert_aggregate_to_json(const ExpertAggregate& aggregate) {
  return json{{"n", aggregate.n},
              {"rubric_mean", aggregate.rubric_mean},
              {"brevity_mean", aggregate.brevity_mean},
              {"brevity_mean_abs", aggregate.brevity_mean_abs},
              {"accuracy_mean", aggregate.accuracy_mean},
              {"danger_rate", aggregate.danger_rate}};
}

}  // namespace parp
