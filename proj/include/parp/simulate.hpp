#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "parp/metrics_detection.hpp"
#include "parp/metrics_region.hpp"
#include "parp/prompts.hpp"
#include "parp/scene_graph.hpp"
#include "parp/vocab.hpp"

namespace parp {

// Perturbations applied when deriving the noisy detector outputs from the
// perfect ones. All zeros leaves the perfect outputs untouched.
struct NoiseConfig {
  double box_jitter_sigma = 0.0;       // px, gaussian per coordinate
  double region_drop_prob = 0.0;
  double lesion_drop_prob = 0.0;
  double false_positive_rate = 0.0;    // expected spurious lesion boxes/image
  double confidence_sigma = 0.0;       // downward confidence perturbation
  std::uint64_t seed = 0;
};

void validate_noise_config(const NoiseConfig& config);

// 29 template boxes aligned with the region vocabulary order, laid out on
// a square canvas with nested zones so one lesion box can overlap several
// regions.
struct RegionLayout {
  std::vector<BBoxXYXY> boxes;
  double canvas = 512.0;
};

const RegionLayout& default_region_layout();

struct ScenarioImage {
  SceneGraph gt;
  std::vector<MultiLabelGtBox> gt_lesions;  // ground-truth lesion instances
  DetectionSet perfect;                     // GT boxes, confidence 1
  DetectionSet noisy;
  RegionalPrompt expected_prompt;           // training prompt of gt
};

struct Scenario {
  std::vector<ScenarioImage> images;
  NoiseConfig noise;
  double assign_iou = 0.4;
};

// Deterministic synthetic scenario. Lesion sets respect hierarchy closure
// (a third-level lesion implies its parent chain in the raw GT), lesion
// boxes coincide with host region boxes, and lesion placement is arranged
// so that a zero-noise pipeline run reproduces the training prompts
// exactly.
Scenario generate_scenario(int n_images, const RegionVocabulary& regions,
                           const LesionTaxonomy& taxonomy,
                           const RegionLayout& layout,
                           const NoiseConfig& noise, double assign_iou = 0.4);

struct PipelineThresholds {
  double conf = 0.35;
  double nms_iou = 0.45;
  double assign_iou = 0.4;
};

struct PipelineResult {
  std::vector<RegionalPrompt> inference_prompts;
  double prompt_agreement = 0.0;  // matching tokens / (n_regions * n_images)
  DetectionEvalResult detection;
  RegionEvalResult region;
};

// Full inference-side pipeline over the noisy detections: NMS, lesion-to-
// region assignment, prompt construction, then evaluation against the
// expected prompts and ground truth.
PipelineResult run_pipeline(const Scenario& scenario,
                            const RegionVocabulary& regions,
                            const LesionTaxonomy& taxonomy,
                            const PipelineThresholds& thresholds = {});

}  // namespace parp
