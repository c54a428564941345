#include "parp/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "parp/rng.hpp"

namespace parp {

void validate_noise_config(const NoiseConfig& config) {
  auto check_prob = [](double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ValidationError(std::string(what) + " must be in [0,1]");
    }
  };
  auto check_sigma = [](double s, const char* what) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw ValidationError(std::string(what) + " must be finite and >= 0");
    }
  };
  check_sigma(config.box_jitter_sigma, "box jitter sigma");
  check_prob(config.region_drop_prob, "region drop probability");
  check_prob(config.lesion_drop_prob, "lesion drop probability");
  check_sigma(config.false_positive_rate, "false positive rate");
  check_sigma(config.confidence_sigma, "confidence sigma");
}

const RegionLayout& default_region_layout() {
  // Aligned with RegionVocabulary::default_vocabulary(). Lung zones cover
  // large fractions of their lungs on purpose: a lesion hosted on a zone
  // then overlaps the whole lung too, exercising multi-region assignment.
  static const RegionLayout layout{
      {
          BBoxXYXY(30, 60, 240, 420),    // right lung
          BBoxXYXY(30, 60, 240, 230),    // right upper lung zone
          BBoxXYXY(30, 180, 240, 330),   // right mid lung zone
          BBoxXYXY(30, 290, 240, 420),   // right lower lung zone
          BBoxXYXY(150, 180, 250, 300),  // right hilar structures
          BBoxXYXY(30, 60, 240, 140),    // right apical zone
          BBoxXYXY(40, 380, 130, 440),   // right costophrenic angle
          BBoxXYXY(30, 390, 240, 460),   // right hemidiaphragm
          BBoxXYXY(272, 60, 482, 420),   // left lung
          BBoxXYXY(272, 60, 482, 230),   // left upper lung zone
          BBoxXYXY(272, 180, 482, 330),  // left mid lung zone
          BBoxXYXY(272, 290, 482, 420),  // left lower lung zone
          BBoxXYXY(262, 180, 362, 300),  // left hilar structures
          BBoxXYXY(272, 60, 482, 140),   // left apical zone
          BBoxXYXY(382, 380, 472, 440),  // left costophrenic angle
          BBoxXYXY(272, 390, 482, 460),  // left hemidiaphragm
          BBoxXYXY(236, 40, 276, 200),   // trachea
          BBoxXYXY(226, 40, 286, 460),   // spine
          BBoxXYXY(40, 50, 240, 110),    // right clavicle
          BBoxXYXY(272, 50, 472, 110),   // left clavicle
          BBoxXYXY(250, 150, 330, 210),  // aortic arch
          BBoxXYXY(200, 120, 330, 400),  // mediastinum
          BBoxXYXY(200, 120, 330, 240),  // upper mediastinum
          BBoxXYXY(290, 140, 340, 260),  // svc
          BBoxXYXY(190, 260, 350, 420),  // cardiac silhouette
          BBoxXYXY(300, 250, 350, 300),  // cavoatrial junction
          BBoxXYXY(290, 280, 360, 360),  // right atrium
          BBoxXYXY(240, 190, 290, 240),  // carina
          BBoxXYXY(30, 420, 482, 500),   // abdomen
      },
      512.0};
  return layout;
}

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

BBoxXYXY jitter_box(const BBoxXYXY& b, SplitRng& rng, double sigma) {
  const double x1 = b.x1 + rng.gaussian(sigma);
  const double y1 = b.y1 + rng.gaussian(sigma);
  const double x2 = b.x2 + rng.gaussian(sigma);
  const double y2 = b.y2 + rng.gaussian(sigma);
  double lo_x = std::max(0.0, std::min(x1, x2));
  double hi_x = std::max(x1, x2);
  double lo_y = std::max(0.0, std::min(y1, y2));
  double hi_y = std::max(y1, y2);
  if (hi_x - lo_x < 1.0) {
    hi_x = lo_x + 1.0;
  }
  if (hi_y - lo_y < 1.0) {
    hi_y = lo_y + 1.0;
  }
  return BBoxXYXY(lo_x, lo_y, hi_x, hi_y);
}

// Frequency-weighted class draw plus hierarchy closure: a third-level
// class pulls in its second-level parent and the root, a second-level
// class pulls in the root.
std::vector<int> sample_class_set(SplitRng& rng, const LesionTaxonomy& taxonomy) {
  std::vector<double> weights;
  weights.reserve(taxonomy.size());
  for (int i = 0; i < taxonomy.size(); ++i) {
    weights.push_back(std::max(taxonomy.frequency(i), 1e-6));
  }
  std::set<int> classes;
  classes.insert(rng.weighted_index(weights));
  if (rng.bernoulli(0.35)) {
    classes.insert(rng.weighted_index(weights));
  }
  std::set<int> closed;
  for (int c : classes) {
    closed.insert(c);
    int cursor = c;
    while (taxonomy.parent(cursor) >= 0) {
      cursor = taxonomy.parent(cursor);
      closed.insert(cursor);
    }
    if (taxonomy.level(c) == LesionLevel::kSecond ||
        taxonomy.level(c) == LesionLevel::kThird) {
      closed.insert(taxonomy.root_index());
    }
  }
  return std::vector<int>(closed.begin(), closed.end());
}

DetectionSet add_noise(const DetectionSet& perfect, SplitRng& rng,
                       const NoiseConfig& noise, int num_classes,
                       double canvas) {
  DetectionSet noisy;
  noisy.image_id = perfect.image_id;
  for (const RegionDetection& rd : perfect.region_detections) {
    if (rng.bernoulli(noise.region_drop_prob)) {
      continue;
    }
    BBoxXYXY box = jitter_box(rd.box, rng, noise.box_jitter_sigma);
    double score = clamp01(rd.score - std::abs(rng.gaussian(noise.confidence_sigma)));
    noisy.region_detections.push_back(RegionDetection{rd.region_index, box, score});
  }
  for (const ScoredBox& ld : perfect.lesion_detections) {
    if (rng.bernoulli(noise.lesion_drop_prob)) {
      continue;
    }
    BBoxXYXY box = jitter_box(ld.box, rng, noise.box_jitter_sigma);
    double objectness =
        clamp01(ld.objectness - std::abs(rng.gaussian(noise.confidence_sigma)));
    std::vector<double> conf(ld.class_conf.size(), 0.0);
    for (std::size_t j = 0; j < conf.size(); ++j) {
      if (ld.class_conf[j] > 0.0) {
        conf[j] = clamp01(ld.class_conf[j] -
                          std::abs(rng.gaussian(noise.confidence_sigma)));
      }
    }
    noisy.lesion_detections.emplace_back(box, objectness, std::move(conf));
  }
  const int n_fp = rng.poisson(noise.false_positive_rate);
  for (int k = 0; k < n_fp; ++k) {
    const double w = rng.uniform(30.0, 120.0);
    const double h = rng.uniform(30.0, 120.0);
    const double x1 = rng.uniform(0.0, canvas - w);
    const double y1 = rng.uniform(0.0, canvas - h);
    std::vector<double> conf(num_classes, 0.0);
    conf[rng.uniform_int(0, num_classes - 1)] = rng.uniform(0.4, 0.9);
    if (rng.bernoulli(0.3)) {
      const int extra = rng.uniform_int(0, num_classes - 1);
      conf[extra] = std::max(conf[extra], rng.uniform(0.4, 0.9));
    }
    noisy.lesion_detections.emplace_back(BBoxXYXY(x1, y1, x1 + w, y1 + h),
                                         rng.uniform(0.45, 0.95),
                                         std::move(conf));
  }
  return noisy;
}

}  // namespace

Scenario generate_scenario(int n_images, const RegionVocabulary& regions,
                           const LesionTaxonomy& taxonomy,
                           const RegionLayout& layout,
                           const NoiseConfig& noise, double assign_iou) {
  if (n_images < 1) {
    throw ValidationError("n_images must be >= 1");
  }
  validate_noise_config(noise);
  if (static_cast<int>(layout.boxes.size()) != regions.size()) {
    throw ValidationError("region layout size does not match the vocabulary");
  }
  if (!(assign_iou >= 0.0 && assign_iou <= 1.0)) {
    throw ValidationError("assignment IoU threshold must be in [0,1]");
  }
  const int n_regions = regions.size();

  // Pairwise template IoU; the per-image affine (uniform scale + shift)
  // leaves IoU invariant, so hit sets computed here hold for every image.
  std::vector<std::vector<double>> tmpl_iou(n_regions,
                                            std::vector<double>(n_regions, 0.0));
  for (int a = 0; a < n_regions; ++a) {
    for (int b = 0; b < n_regions; ++b) {
      tmpl_iou[a][b] = iou(layout.boxes[a], layout.boxes[b]);
    }
  }

  Scenario scenario;
  scenario.noise = noise;
  scenario.assign_iou = assign_iou;
  SplitRng base(noise.seed);

  for (int img = 0; img < n_images; ++img) {
    SplitRng rng = base.child(static_cast<std::uint64_t>(img));
    ScenarioImage si;
    si.gt.image_id = "sim_" + std::to_string(img);

    const double scale = rng.uniform(0.95, 1.05);
    const double dx = rng.uniform(0.0, 8.0);
    const double dy = rng.uniform(0.0, 8.0);
    std::vector<BBoxXYXY> region_boxes;
    region_boxes.reserve(n_regions);
    for (const BBoxXYXY& t : layout.boxes) {
      region_boxes.emplace_back(t.x1 * scale + dx, t.y1 * scale + dy,
                                t.x2 * scale + dx, t.y2 * scale + dy);
    }

    // Lesion events: each one is hosted on a region box. An event is
    // accepted only when no region it reaches (IoU >= assign_iou) is
    // already served by an earlier event; that keeps the highest-IoU
    // assignment unambiguous and makes the zero-noise pipeline reproduce
    // the training prompt token for token.
    struct Event {
      int host;
      std::vector<int> classes;
    };
    std::vector<Event> events;
    std::vector<bool> region_hit(n_regions, false);
    const int n_candidates = rng.uniform_int(1, 5);
    for (int e = 0; e < n_candidates; ++e) {
      const int host = rng.uniform_int(0, n_regions - 1);
      std::vector<int> classes = sample_class_set(rng, taxonomy);
      bool blocked = false;
      for (int r = 0; r < n_regions; ++r) {
        if (tmpl_iou[host][r] >= assign_iou && region_hit[r]) {
          blocked = true;
          break;
        }
      }
      if (blocked) {
        continue;
      }
      for (int r = 0; r < n_regions; ++r) {
        if (tmpl_iou[host][r] >= assign_iou) {
          region_hit[r] = true;
        }
      }
      events.push_back(Event{host, std::move(classes)});
    }

    for (int r = 0; r < n_regions; ++r) {
      std::vector<int> lesions;
      for (const Event& e : events) {
        if (tmpl_iou[e.host][r] >= assign_iou) {
          lesions = e.classes;
          break;
        }
      }
      si.gt.regions.push_back(SceneGraphRegion{r, region_boxes[r], lesions});
    }
    si.expected_prompt = build_training_prompt(si.gt, regions, taxonomy);

    si.perfect.image_id = si.gt.image_id;
    for (int r = 0; r < n_regions; ++r) {
      si.perfect.region_detections.push_back(
          RegionDetection{r, region_boxes[r], 1.0});
    }
    for (const Event& e : events) {
      std::vector<double> conf(taxonomy.size(), 0.0);
      for (int c : e.classes) {
        conf[c] = 1.0;
      }
      si.perfect.lesion_detections.emplace_back(region_boxes[e.host], 1.0,
                                                conf);
      si.gt_lesions.push_back(MultiLabelGtBox{region_boxes[e.host], e.classes});
    }

    si.noisy = add_noise(si.perfect, rng, noise, taxonomy.size(),
                         layout.canvas);
    scenario.images.push_back(std::move(si));
  }
  return scenario;
}

PipelineResult run_pipeline(const Scenario& scenario,
                            const RegionVocabulary& regions,
                            const LesionTaxonomy& taxonomy,
                            const PipelineThresholds& thresholds) {
  if (scenario.images.empty()) {
    throw ValidationError("scenario has no images");
  }
  const int n_regions = regions.size();
  PipelineResult result;
  std::vector<DetectionEvalImage> det_images;
  std::vector<SceneGraph> gts;
  std::vector<DetectionSet> region_preds;
  long matched_tokens = 0;
  for (const ScenarioImage& image : scenario.images) {
    std::vector<ScoredBox> kept = nms_multilabel(
        image.noisy.lesion_detections, thresholds.conf, thresholds.nms_iou);
    RegionAssignment assignment = assign_lesions_to_regions(
        image.noisy.region_detections, kept, n_regions, thresholds.assign_iou);
    RegionalPrompt prompt =
        build_inference_prompt(assignment, kept, taxonomy, n_regions);
    for (int r = 0; r < n_regions; ++r) {
      if (prompt.tokens[r] == image.expected_prompt.tokens[r]) {
        ++matched_tokens;
      }
    }
    det_images.push_back(DetectionEvalImage{image.gt_lesions, kept});
    gts.push_back(image.gt);
    region_preds.push_back(image.noisy);
    result.inference_prompts.push_back(std::move(prompt));
  }
  result.prompt_agreement =
      static_cast<double>(matched_tokens) /
      (static_cast<double>(n_regions) * static_cast<double>(scenario.images.size()));
  result.detection = detection_eval(det_images, taxonomy.size(), {0.5, 0.95},
                                    thresholds.conf);
  result.region = region_eval(gts, region_preds, n_regions);
  return result;
}

}  // namespace parp
