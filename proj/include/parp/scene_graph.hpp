#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "parp/bbox.hpp"
#include "parp/geometry.hpp"
#include "parp/vocab.hpp"

namespace parp {

// One annotated anatomical region: its box plus the set of lesion class
// indices observed in it (sorted, unique).
struct SceneGraphRegion {
  int region_index;
  BBoxXYXY box;
  std::vector<int> lesions;
};

// Per-image ground truth: region boxes and lesion attribute sets.
struct SceneGraph {
  std::string image_id;
  std::vector<SceneGraphRegion> regions;
};

// Unresolved mirror of the scene-graph file schema, before names are
// checked against the vocabularies.
struct RawSceneGraphRegion {
  std::string name;
  std::array<double, 4> bbox;  // x1, y1, x2, y2
  std::vector<std::string> lesions;
};

struct RawSceneGraph {
  std::string image_id;
  std::vector<RawSceneGraphRegion> regions;
  std::optional<std::string> findings;  // report Findings section, if any
};

// Resolves names to indices and enforces all SceneGraph invariants.
// Throws ValidationError on unknown region or lesion names, duplicate
// regions, and malformed boxes.
SceneGraph validate_scene_graph(const RawSceneGraph& raw,
                                const RegionVocabulary& regions,
                                const LesionTaxonomy& taxonomy);

// One detected anatomical region.
struct RegionDetection {
  int region_index;
  BBoxXYXY box;
  double score;  // in [0,1]
};

// External detector outputs for one image: at most one detection per
// region index, plus multi-label lesion boxes.
struct DetectionSet {
  std::string image_id;
  std::vector<RegionDetection> region_detections;
  std::vector<ScoredBox> lesion_detections;
};

struct RawRegionDetection {
  std::string name;
  std::array<double, 4> bbox;
  double score;
};

struct RawLesionDetection {
  std::array<double, 4> bbox;
  bool bbox_is_xywh = false;  // center form accepted on input
  double objectness;
  std::vector<std::pair<std::string, double>> class_conf;
};

struct RawDetectionSet {
  std::string image_id;
  std::vector<RawRegionDetection> region_detections;
  std::vector<RawLesionDetection> lesion_detections;
};

DetectionSet validate_detection_set(const RawDetectionSet& raw,
                                    const RegionVocabulary& regions,
                                    const LesionTaxonomy& taxonomy);

}  // namespace parp
