#include "parp/metrics_region.hpp"

#include <algorithm>
#include <map>

namespace parp {

RegionEvalResult region_eval(const std::vector<SceneGraph>& gt,
                             const std::vector<DetectionSet>& predictions,
                             int n_regions) {
  if (gt.empty()) {
    throw ValidationError("region evaluation requires at least one GT image");
  }
  std::map<std::string, const DetectionSet*> pred_by_id;
  for (const DetectionSet& d : predictions) {
    if (!pred_by_id.emplace(d.image_id, &d).second) {
      throw ValidationError("duplicate prediction image id: '" + d.image_id +
                            "'");
    }
  }

  RegionEvalResult result;
  result.per_region.resize(n_regions);
  for (int r = 0; r < n_regions; ++r) {
    result.per_region[r].region_index = r;
  }

  long detected_total = 0;
  std::map<std::string, bool> gt_seen;
  for (const SceneGraph& image : gt) {
    if (!gt_seen.emplace(image.image_id, true).second) {
      throw ValidationError("duplicate GT image id: '" + image.image_id + "'");
    }
    const DetectionSet* pred = nullptr;
    auto it = pred_by_id.find(image.image_id);
    if (it != pred_by_id.end()) {
      pred = it->second;
    } else {
      result.warnings.push_back("no predictions for image '" + image.image_id +
                                "'");
    }
    std::map<int, const RegionDetection*> pred_regions;
    if (pred != nullptr) {
      detected_total += static_cast<long>(pred->region_detections.size());
      for (const RegionDetection& rd : pred->region_detections) {
        pred_regions[rd.region_index] = &rd;
      }
    }
    for (const SceneGraphRegion& region : image.regions) {
      if (region.region_index < 0 || region.region_index >= n_regions) {
        throw ValidationError("region index out of range in GT");
      }
      RegionEvalPerRegion& acc = result.per_region[region.region_index];
      ++acc.gt_images;
      auto match = pred_regions.find(region.region_index);
      if (match == pred_regions.end()) {
        acc.union_sum += region.box.area();
        continue;
      }
      const BBoxXYXY& a = region.box;
      const BBoxXYXY& b = match->second->box;
      const double ix = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
      const double iy = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
      const double inter = (ix > 0.0 && iy > 0.0) ? ix * iy : 0.0;
      acc.intersection_sum += inter;
      acc.union_sum += a.area() + b.area() - inter;
    }
  }

  double iou_sum = 0.0;
  int regions_with_gt = 0;
  for (RegionEvalPerRegion& acc : result.per_region) {
    if (acc.gt_images == 0) {
      result.warnings.push_back("region " + std::to_string(acc.region_index) +
                                " never appears in GT; excluded from the "
                                "overall average");
      continue;
    }
    acc.micro_iou = acc.union_sum > 0.0 ? acc.intersection_sum / acc.union_sum
                                        : 0.0;
    iou_sum += acc.micro_iou;
    ++regions_with_gt;
  }
  result.overall_avg_iou =
      regions_with_gt > 0 ? iou_sum / static_cast<double>(regions_with_gt) : 0.0;
  result.mean_detected_regions_per_image =
      static_cast<double>(detected_total) / static_cast<double>(gt.size());
  return result;
}

}  // namespace parp
