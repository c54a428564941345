#pragma once

#include <string>
#include <utility>
#include <vector>

#include "parp/geometry.hpp"
#include "parp/scene_graph.hpp"
#include "parp/vocab.hpp"

namespace parp {

// Token for a region with no finding.
inline constexpr const char* kNegToken = "[NEG]";

// Sentinel separating a rendered prompt from the report text.
inline constexpr const char* kPromptSeparator = "[SEP]";

// Ordered lesion tokens, one per anatomical region; slot i belongs to
// region index i. Each token is [NEG] or a normalized class name.
struct RegionalPrompt {
  std::vector<std::string> tokens;

  std::string rendered() const;  // tokens joined with single spaces
  bool operator==(const RegionalPrompt&) const = default;
};

// Throws ValidationError unless the prompt has exactly one well-formed
// token per region.
void validate_prompt(const RegionalPrompt& prompt,
                     const LesionTaxonomy& taxonomy, int n_regions);

// Collapses a region's lesion set to its single prompt token:
//   empty set                      -> [NEG]
//   third-level present            -> its second-level parent's token
//   root + second-level present    -> the second-level token
//   several candidates remain      -> the least frequent one (frequency
//                                     ties broken by lower taxonomy index)
//   otherwise                      -> the class's own token
std::string select_region_token(const std::vector<int>& lesions,
                                const LesionTaxonomy& taxonomy);

// Ground-truth prompt for a scene graph: token i comes from region i's
// lesion set; regions absent from the graph read [NEG].
RegionalPrompt build_training_prompt(const SceneGraph& sg,
                                     const RegionVocabulary& regions,
                                     const LesionTaxonomy& taxonomy);

// Per-region choice of lesion box: the index of the box with the highest
// IoU against the detected region, when that IoU reaches the threshold.
struct RegionAssignment {
  struct Slot {
    int lesion = -1;   // index into the lesion box list; -1 = unassigned
    double iou = 0.0;
  };
  std::vector<Slot> slots;  // one per region index
};

// Assigns post-NMS lesion boxes to detected regions. A lesion box may
// serve several regions; regions that were not detected, or whose best
// IoU falls below the threshold, stay unassigned. IoU ties between lesion
// boxes are broken by lower box index.
RegionAssignment assign_lesions_to_regions(
    const std::vector<RegionDetection>& region_detections,
    const std::vector<ScoredBox>& lesion_boxes, int n_regions,
    double iou_threshold = 0.4);

// Inference prompt: assigned regions get select_region_token over the
// chosen box's active classes (confidences surviving NMS thresholding);
// everything else reads [NEG].
RegionalPrompt build_inference_prompt(const RegionAssignment& assignment,
                                      const std::vector<ScoredBox>& lesion_boxes,
                                      const LesionTaxonomy& taxonomy,
                                      int n_regions);

// Rendered prompt + " [SEP] " + report, losslessly parseable. Separator
// occurrences inside the report are backslash-escaped. An empty report
// serializes to the prompt followed by the bare separator (the inference
// trigger form).
std::string serialize_training_sample(const RegionalPrompt& prompt,
                                      const std::string& report);

std::pair<RegionalPrompt, std::string> parse_training_sample(
    const std::string& serialized, int n_regions);

// Free-text prompt used by the text-prompt ablation: a fixed header plus
// one numbered line per group of lesions sharing the same region set.
std::string build_text_prompt_ablation(const RegionAssignment& assignment,
                                       const std::vector<ScoredBox>& lesion_boxes,
                                       const RegionVocabulary& regions,
                                       const LesionTaxonomy& taxonomy);

}  // namespace parp
