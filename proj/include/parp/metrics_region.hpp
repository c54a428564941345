#pragma once

#include <string>
#include <vector>

#include "parp/scene_graph.hpp"

namespace parp {

struct RegionEvalPerRegion {
  int region_index = -1;
  long gt_images = 0;          // images whose GT contains this region
  double intersection_sum = 0.0;
  double union_sum = 0.0;
  double micro_iou = 0.0;      // intersection_sum / union_sum
};

struct RegionEvalResult {
  std::vector<RegionEvalPerRegion> per_region;
  double overall_avg_iou = 0.0;  // unweighted mean over regions with GT
  double mean_detected_regions_per_image = 0.0;
  std::vector<std::string> warnings;
};

// Region-detector quality against scene-graph ground truth, matched by
// image id. Per region, micro IoU pools intersections and unions over all
// images where the region exists in GT; a missed detection contributes
// zero intersection and the full GT area to the union. Spurious
// predictions for regions absent from an image's GT are ignored.
RegionEvalResult region_eval(const std::vector<SceneGraph>& gt,
                             const std::vector<DetectionSet>& predictions,
                             int n_regions);

}  // namespace parp
