#include "parp/scene_graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace parp {

SceneGraph validate_scene_graph(const RawSceneGraph& raw,
                                const RegionVocabulary& regions,
                                const LesionTaxonomy& taxonomy) {
  if (raw.image_id.empty()) {
    throw ValidationError("scene graph is missing an image id");
  }
  SceneGraph sg;
  sg.image_id = raw.image_id;
  std::set<int> seen;
  for (const RawSceneGraphRegion& r : raw.regions) {
    int region_index = regions.find(r.name);
    if (region_index < 0) {
      throw ValidationError("image '" + raw.image_id +
                            "': unknown region name: '" + r.name + "'");
    }
    if (!seen.insert(region_index).second) {
      throw ValidationError("image '" + raw.image_id +
                            "': duplicate region: '" + r.name + "'");
    }
    std::vector<int> lesions;
    for (const std::string& lesion : r.lesions) {
      int idx = taxonomy.find(lesion);
      if (idx < 0) {
        throw ValidationError("image '" + raw.image_id +
                              "': unknown lesion name: '" + lesion + "'");
      }
      lesions.push_back(idx);
    }
    std::sort(lesions.begin(), lesions.end());
    lesions.erase(std::unique(lesions.begin(), lesions.end()), lesions.end());
    sg.regions.push_back(SceneGraphRegion{
        region_index, BBoxXYXY(r.bbox[0], r.bbox[1], r.bbox[2], r.bbox[3]),
        std::move(lesions)});
  }
  return sg;
}

DetectionSet validate_detection_set(const RawDetectionSet& raw,
                                    const RegionVocabulary& regions,
                                    const LesionTaxonomy& taxonomy) {
  if (raw.image_id.empty()) {
    throw ValidationError("detection set is missing an image id");
  }
  DetectionSet out;
  out.image_id = raw.image_id;
  std::set<int> seen;
  for (const RawRegionDetection& r : raw.region_detections) {
    int region_index = regions.find(r.name);
    if (region_index < 0) {
      throw ValidationError("image '" + raw.image_id +
                            "': unknown region name: '" + r.name + "'");
    }
    if (!seen.insert(region_index).second) {
      throw ValidationError("image '" + raw.image_id +
                            "': more than one detection for region '" +
                            r.name + "'");
    }
    if (!std::isfinite(r.score) || r.score < 0.0 || r.score > 1.0) {
      throw ValidationError("image '" + raw.image_id +
                            "': region score must be in [0,1]");
    }
    out.region_detections.push_back(RegionDetection{
        region_index, BBoxXYXY(r.bbox[0], r.bbox[1], r.bbox[2], r.bbox[3]),
        r.score});
  }
  for (const RawLesionDetection& l : raw.lesion_detections) {
    BBoxXYXY box = l.bbox_is_xywh
                       ? to_xyxy(BBoxXYWH(l.bbox[0], l.bbox[1], l.bbox[2],
                                          l.bbox[3]))
                       : BBoxXYXY(l.bbox[0], l.bbox[1], l.bbox[2], l.bbox[3]);
    std::vector<double> conf(taxonomy.size(), 0.0);
    for (const auto& [name, value] : l.class_conf) {
      int idx = taxonomy.find(name);
      if (idx < 0) {
        throw ValidationError("image '" + raw.image_id +
                              "': unknown lesion name: '" + name + "'");
      }
      conf[idx] = value;
    }
    out.lesion_detections.emplace_back(box, l.objectness, std::move(conf));
  }
  return out;
}

}  // namespace parp
