#include "parp/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "parp/manifest.hpp"

namespace parp {

namespace {

void check_schema_version(const json& doc) {
  if (doc.is_object() && doc.contains("schema_version")) {
    const json& v = doc.at("schema_version");
    if (!v.is_number_integer() || v.get<int>() != kSchemaVersion) {
      throw ValidationError("unsupported schema_version: " + v.dump());
    }
  }
}

// Accepts {"schema_version", <key>: [...]} (canonical), {"items": [...]},
// a bare array, or a single record object.
json unwrap_items(const json& doc, const char* key) {
  if (doc.is_array()) {
    return doc;
  }
  if (doc.is_object()) {
    check_schema_version(doc);
    if (doc.contains(key)) {
      return doc.at(key);
    }
    if (doc.contains("items")) {
      return doc.at("items");
    }
    return json::array({doc});
  }
  throw ValidationError("expected an object or array document");
}

std::array<double, 4> parse_box4(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 4) {
    throw ValidationError(std::string(what) + " must be an array of 4 numbers");
  }
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!j[i].is_number()) {
      throw ValidationError(std::string(what) + " must contain numbers only");
    }
    out[i] = j[i].get<double>();
  }
  return out;
}

[[noreturn]] void rethrow_as_validation(const char* what,
                                        const std::exception& e) {
  throw ValidationError(std::string(what) + ": " + e.what());
}

}  // namespace

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("failed to parse '" + path.string() + "': " +
                          e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out << doc.dump(2) << "\n";
  if (!out) {
    throw IoError("failed to write '" + path.string() + "'");
  }
}

// ---- Config schemas -------------------------------------------------------

RegionVocabulary parse_region_vocabulary(const json& doc) {
  try {
    check_schema_version(doc);
    std::vector<std::string> names;
    for (const json& n : doc.at("regions")) {
      names.push_back(n.get<std::string>());
    }
    return RegionVocabulary(std::move(names));
  } catch (const json::exception& e) {
    rethrow_as_validation("region vocabulary", e);
  }
}

json region_vocabulary_to_json(const RegionVocabulary& vocab) {
  return json{{"schema_version", kSchemaVersion}, {"regions", vocab.names()}};
}

LesionTaxonomy parse_taxonomy(const json& doc) {
  try {
    check_schema_version(doc);
    const json& classes = doc.at("classes");
    std::vector<std::string> names;
    for (const json& c : classes) {
      names.push_back(c.at("name").get<std::string>());
    }
    auto find_name = [&](const std::string& n) -> int {
      auto it = std::find(names.begin(), names.end(), n);
      if (it == names.end()) {
        throw ValidationError("taxonomy parent '" + n + "' is not a class");
      }
      return static_cast<int>(it - names.begin());
    };
    std::vector<LesionClass> out;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const json& c = classes[i];
      LesionClass lc;
      lc.name = names[i];
      lc.level = lesion_level_from_string(c.at("level").get<std::string>());
      lc.parent = (c.contains("parent") && !c.at("parent").is_null())
                      ? find_name(c.at("parent").get<std::string>())
                      : -1;
      lc.frequency = c.value("frequency", 0.0);
      out.push_back(std::move(lc));
    }
    return LesionTaxonomy(std::move(out));
  } catch (const json::exception& e) {
    rethrow_as_validation("taxonomy", e);
  }
}

json taxonomy_to_json(const LesionTaxonomy& taxonomy) {
  json classes = json::array();
  for (const LesionClass& c : taxonomy.classes()) {
    json entry{{"name", c.name},
               {"level", to_string(c.level)},
               {"frequency", c.frequency}};
    entry["parent"] =
        c.parent >= 0 ? json(taxonomy.name(c.parent)) : json(nullptr);
    classes.push_back(std::move(entry));
  }
  return json{{"schema_version", kSchemaVersion}, {"classes", classes}};
}

RegionLayout parse_region_layout(const json& doc, const RegionVocabulary& vocab) {
  try {
    check_schema_version(doc);
    RegionLayout layout;
    layout.canvas = doc.value("canvas", 512.0);
    const json& boxes = doc.at("boxes");
    for (int r = 0; r < vocab.size(); ++r) {
      const std::string& name = vocab.name(r);
      if (!boxes.contains(name)) {
        throw ValidationError("region layout is missing '" + name + "'");
      }
      auto b = parse_box4(boxes.at(name), "layout box");
      layout.boxes.emplace_back(b[0], b[1], b[2], b[3]);
    }
    return layout;
  } catch (const json::exception& e) {
    rethrow_as_validation("region layout", e);
  }
}

json region_layout_to_json(const RegionLayout& layout,
                           const RegionVocabulary& vocab) {
  json boxes = json::object();
  for (int r = 0; r < vocab.size(); ++r) {
    const BBoxXYXY& b = layout.boxes[r];
    boxes[vocab.name(r)] = {b.x1, b.y1, b.x2, b.y2};
  }
  return json{{"schema_version", kSchemaVersion},
              {"canvas", layout.canvas},
              {"boxes", boxes}};
}

NoiseConfig parse_noise_config(const json& doc) {
  try {
    check_schema_version(doc);
    static const std::set<std::string> known{
        "schema_version",      "box_jitter_sigma", "region_drop_prob",
        "lesion_drop_prob",    "false_positive_rate", "confidence_sigma",
        "seed"};
    for (const auto& [key, value] : doc.items()) {
      if (known.find(key) == known.end()) {
        throw ValidationError("unknown noise config key: '" + key + "'");
      }
    }
    NoiseConfig config;
    config.box_jitter_sigma = doc.value("box_jitter_sigma", 0.0);
    config.region_drop_prob = doc.value("region_drop_prob", 0.0);
    config.lesion_drop_prob = doc.value("lesion_drop_prob", 0.0);
    config.false_positive_rate = doc.value("false_positive_rate", 0.0);
    config.confidence_sigma = doc.value("confidence_sigma", 0.0);
    config.seed = doc.value("seed", std::uint64_t{0});
    validate_noise_config(config);
    return config;
  } catch (const json::exception& e) {
    rethrow_as_validation("noise config", e);
  }
}

json noise_config_to_json(const NoiseConfig& config) {
  return json{{"schema_version", kSchemaVersion},
              {"box_jitter_sigma", config.box_jitter_sigma},
              {"region_drop_prob", config.region_drop_prob},
              {"lesion_drop_prob", config.lesion_drop_prob},
              {"false_positive_rate", config.false_positive_rate},
              {"confidence_sigma", config.confidence_sigma},
              {"seed", config.seed}};
}

// ---- Data schemas ---------------------------------------------------------

std::vector<RawSceneGraph> parse_scene_graph_file(const json& doc) {
  try {
    std::vector<RawSceneGraph> out;
    for (const json& item : unwrap_items(doc, "scene_graphs")) {
      check_schema_version(item);
      RawSceneGraph sg;
      sg.image_id = item.at("image_id").get<std::string>();
      if (item.contains("findings") && !item.at("findings").is_null()) {
        sg.findings = item.at("findings").get<std::string>();
      }
      for (const json& r : item.value("regions", json::array())) {
        RawSceneGraphRegion region;
        region.name = r.at("name").get<std::string>();
        region.bbox = parse_box4(r.at("bbox"), "region bbox");
        for (const json& lesion : r.value("lesions", json::array())) {
          region.lesions.push_back(lesion.get<std::string>());
        }
        sg.regions.push_back(std::move(region));
      }
      out.push_back(std::move(sg));
    }
    return out;
  } catch (const json::exception& e) {
    rethrow_as_validation("scene graph file", e);
  }
}

json scene_graphs_to_json(const std::vector<RawSceneGraph>& graphs) {
  json items = json::array();
  for (const RawSceneGraph& sg : graphs) {
    json regions = json::array();
    for (const RawSceneGraphRegion& r : sg.regions) {
      regions.push_back(json{{"name", r.name},
                             {"bbox", r.bbox},
                             {"lesions", r.lesions}});
    }
    json item{{"image_id", sg.image_id}, {"regions", regions}};
    if (sg.findings) {
      item["findings"] = *sg.findings;
    }
    items.push_back(std::move(item));
  }
  return json{{"schema_version", kSchemaVersion}, {"scene_graphs", items}};
}

json scene_graph_to_raw_json(const SceneGraph& sg, const RegionVocabulary& vocab,
                             const LesionTaxonomy& taxonomy) {
  json regions = json::array();
  for (const SceneGraphRegion& r : sg.regions) {
    json lesions = json::array();
    for (int c : r.lesions) {
      lesions.push_back(taxonomy.name(c));
    }
    regions.push_back(json{
        {"name", vocab.name(r.region_index)},
        {"bbox", {r.box.x1, r.box.y1, r.box.x2, r.box.y2}},
        {"lesions", lesions}});
  }
  return json{{"image_id", sg.image_id}, {"regions", regions}};
}

std::vector<RawDetectionSet> parse_detection_file(const json& doc) {
  try {
    std::vector<RawDetectionSet> out;
    for (const json& item : unwrap_items(doc, "detections")) {
      check_schema_version(item);
      RawDetectionSet ds;
      ds.image_id = item.at("image_id").get<std::string>();
      for (const json& r : item.value("region_detections", json::array())) {
        RawRegionDetection rd;
        rd.name = r.at("name").get<std::string>();
        rd.bbox = parse_box4(r.at("bbox"), "region detection bbox");
        rd.score = r.at("score").get<double>();
        ds.region_detections.push_back(std::move(rd));
      }
      for (const json& l : item.value("lesion_detections", json::array())) {
        RawLesionDetection ld;
        if (l.contains("bbox_xywh")) {
          ld.bbox = parse_box4(l.at("bbox_xywh"), "lesion bbox_xywh");
          ld.bbox_is_xywh = true;
        } else {
          ld.bbox = parse_box4(l.at("bbox"), "lesion bbox");
        }
        ld.objectness = l.at("objectness").get<double>();
        for (const auto& [name, value] : l.at("class_conf").items()) {
          ld.class_conf.emplace_back(name, value.get<double>());
        }
        ds.lesion_detections.push_back(std::move(ld));
      }
      out.push_back(std::move(ds));
    }
    return out;
  } catch (const json::exception& e) {
    rethrow_as_validation("detection file", e);
  }
}

json detections_to_json(const std::vector<DetectionSet>& sets,
                        const RegionVocabulary& vocab,
                        const LesionTaxonomy& taxonomy) {
  json items = json::array();
  for (const DetectionSet& ds : sets) {
    json region_detections = json::array();
    for (const RegionDetection& rd : ds.region_detections) {
      region_detections.push_back(
          json{{"name", vocab.name(rd.region_index)},
               {"bbox", {rd.box.x1, rd.box.y1, rd.box.x2, rd.box.y2}},
               {"score", rd.score}});
    }
    json lesion_detections = json::array();
    for (const ScoredBox& ld : ds.lesion_detections) {
      json conf = json::object();
      for (int j = 0; j < static_cast<int>(ld.class_conf.size()); ++j) {
        if (ld.class_conf[j] > 0.0) {
          conf[taxonomy.name(j)] = ld.class_conf[j];
        }
      }
      lesion_detections.push_back(
          json{{"bbox", {ld.box.x1, ld.box.y1, ld.box.x2, ld.box.y2}},
               {"objectness", ld.objectness},
               {"class_conf", conf}});
    }
    items.push_back(json{{"image_id", ds.image_id},
                         {"region_detections", region_detections},
                         {"lesion_detections", lesion_detections}});
  }
  return json{{"schema_version", kSchemaVersion}, {"detections", items}};
}

json prompts_to_json(const std::vector<std::string>& image_ids,
                     const std::vector<RegionalPrompt>& prompts) {
  if (image_ids.size() != prompts.size()) {
    throw ValidationError("prompt/image id count mismatch");
  }
  json items = json::array();
  for (std::size_t i = 0; i < prompts.size(); ++i) {
    items.push_back(json{{"image_id", image_ids[i]},
                         {"tokens", prompts[i].tokens},
                         {"rendered", prompts[i].rendered()}});
  }
  return json{{"schema_version", kSchemaVersion}, {"prompts", items}};
}

std::vector<std::pair<std::string, std::string>> parse_text_records(const json& doc) {
  try {
    std::vector<std::pair<std::string, std::string>> out;
    for (const json& item : unwrap_items(doc, "reports")) {
      check_schema_version(item);
      out.emplace_back(item.at("image_id").get<std::string>(),
                       item.at("text").get<std::string>());
    }
    return out;
  } catch (const json::exception& e) {
    rethrow_as_validation("text records", e);
  }
}

Corpus join_corpus(const std::vector<std::pair<std::string, std::string>>& candidates,
                   const std::vector<std::pair<std::string, std::string>>& references) {
  std::map<std::string, const std::string*> ref_by_id;
  for (const auto& [id, text] : references) {
    if (!ref_by_id.emplace(id, &text).second) {
      throw ValidationError("duplicate reference image id: '" + id + "'");
    }
  }
  Corpus corpus;
  for (const auto& [id, text] : candidates) {
    auto it = ref_by_id.find(id);
    if (it == ref_by_id.end()) {
      throw ValidationError("candidate '" + id + "' has no reference");
    }
    corpus.push_back(CorpusSample{id, text, *it->second});
  }
  validate_corpus(corpus);
  return corpus;
}

LabelMatrix parse_label_matrix(const json& doc) {
  try {
    check_schema_version(doc);
    LabelMatrix m;
    for (const json& o : doc.at("observations")) {
      m.observations.push_back(o.get<std::string>());
    }
    for (const json& row : doc.at("rows")) {
      m.image_ids.push_back(row.at("image_id").get<std::string>());
      std::vector<std::uint8_t> labels;
      for (const json& v : row.at("labels")) {
        labels.push_back(static_cast<std::uint8_t>(v.get<int>()));
      }
      m.rows.push_back(std::move(labels));
    }
    validate_label_matrix(m);
    return m;
  } catch (const json::exception& e) {
    rethrow_as_validation("label matrix", e);
  }
}

std::vector<ExpertScore> parse_expert_scores(const json& doc) {
  try {
    std::vector<ExpertScore> out;
    for (const json& item : unwrap_items(doc, "scores")) {
      check_schema_version(item);
      ExpertScore s;
      s.sample_id = item.at("sample_id").get<std::string>();
      s.rubric = item.at("rubric").get<std::string>();
      s.brevity = item.at("brevity").get<int>();
      s.accuracy = item.at("accuracy").get<int>();
      s.danger = item.at("danger").get<int>();
      out.push_back(std::move(s));
    }
    return out;
  } catch (const json::exception& e) {
    rethrow_as_validation("expert scores", e);
  }
}

RawLabelStats parse_label_stats(const json& doc) {
  try {
    check_schema_version(doc);
    std::vector<std::pair<std::string, std::int64_t>> counts;
    for (const auto& [name, value] : doc.at("counts").items()) {
      counts.emplace_back(name, value.get<std::int64_t>());
    }
    return make_label_stats(std::move(counts),
                            doc.value("total", std::int64_t{0}));
  } catch (const json::exception& e) {
    rethrow_as_validation("label stats", e);
  }
}

std::vector<SingleLabelImage> parse_single_label_file(const json& doc,
                                                      const LesionTaxonomy& taxonomy) {
  try {
    std::vector<SingleLabelImage> out;
    for (const json& item : unwrap_items(doc, "labels")) {
      check_schema_version(item);
      SingleLabelImage image;
      image.image_id = item.at("image_id").get<std::string>();
      for (const json& r : item.value("rows", json::array())) {
        auto b = parse_box4(r.at("bbox_xywh"), "bbox_xywh");
        image.rows.push_back(SingleLabelRow{
            taxonomy.index_of(r.at("class").get<std::string>()),
            BBoxXYWH(b[0], b[1], b[2], b[3])});
      }
      out.push_back(std::move(image));
    }
    return out;
  } catch (const json::exception& e) {
    rethrow_as_validation("single-label file", e);
  }
}

json multi_label_to_json(const std::vector<std::pair<std::string, std::vector<MultiLabelBox>>>& images,
                         const LesionTaxonomy& taxonomy) {
  json items = json::array();
  for (const auto& [image_id, boxes] : images) {
    json rows = json::array();
    for (const MultiLabelBox& b : boxes) {
      json classes = json::array();
      for (int c : b.active_classes()) {
        classes.push_back(taxonomy.name(c));
      }
      rows.push_back(json{{"bbox_xywh", {b.box.x, b.box.y, b.box.w, b.box.h}},
                          {"classes", classes}});
    }
    items.push_back(json{{"image_id", image_id}, {"boxes", rows}});
  }
  return json{{"schema_version", kSchemaVersion}, {"labels", items}};
}

// ---- Ingestion ------------------------------------------------------------

IngestResult ingest_dataset(const std::vector<RawSceneGraph>& samples,
                            const RegionVocabulary& vocab,
                            const LesionTaxonomy& taxonomy,
                            const IngestOptions& options,
                            const std::map<std::string, std::string>* split_map) {
  if (!(options.negative_keep_fraction >= 0.0 &&
        options.negative_keep_fraction <= 1.0)) {
    throw ValidationError("negative keep fraction must be in [0,1]");
  }
  IngestResult result;
  result.total = static_cast<long>(samples.size());

  std::vector<std::size_t> after_findings;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const SceneGraph sg = validate_scene_graph(samples[i], vocab, taxonomy);
    if (!ids.insert(sg.image_id).second) {
      throw ValidationError("duplicate image id: '" + sg.image_id + "'");
    }
    if (options.require_findings &&
        (!samples[i].findings || samples[i].findings->empty())) {
      ++result.dropped_missing_findings;
      continue;
    }
    after_findings.push_back(i);
  }

  auto is_negative = [&](const RawSceneGraph& sg) {
    for (const RawSceneGraphRegion& r : sg.regions) {
      if (!r.lesions.empty()) {
        return false;
      }
    }
    return true;
  };

  std::vector<std::size_t> negatives;
  for (std::size_t i : after_findings) {
    if (is_negative(samples[i])) {
      negatives.push_back(i);
    }
  }
  result.negatives_before = static_cast<long>(negatives.size());

  // Hash-of-id order under the seed keeps the subsample stable when the
  // file is reordered.
  std::sort(negatives.begin(), negatives.end(), [&](std::size_t a, std::size_t b) {
    const std::string prefix = std::to_string(options.seed) + ":";
    const std::uint64_t ha = fnv1a64(prefix + samples[a].image_id);
    const std::uint64_t hb = fnv1a64(prefix + samples[b].image_id);
    if (ha != hb) {
      return ha < hb;
    }
    return samples[a].image_id < samples[b].image_id;
  });
  const std::size_t keep_n = static_cast<std::size_t>(
      options.negative_keep_fraction * static_cast<double>(negatives.size()));
  std::set<std::size_t> kept_negatives(negatives.begin(),
                                       negatives.begin() + keep_n);
  result.negatives_kept = static_cast<long>(keep_n);

  for (std::size_t i : after_findings) {
    if (is_negative(samples[i]) &&
        kept_negatives.find(i) == kept_negatives.end()) {
      continue;
    }
    result.kept.push_back(i);
  }

  if (split_map != nullptr) {
    for (std::size_t i : result.kept) {
      auto it = split_map->find(samples[i].image_id);
      if (it == split_map->end()) {
        result.warnings.push_back("image '" + samples[i].image_id +
                                  "' is missing from the split map");
        ++result.split_counts["(none)"];
      } else {
        ++result.split_counts[it->second];
      }
    }
    const char* names[3] = {"train", "validate", "test"};
    for (int s = 0; s < 3; ++s) {
      auto it = result.split_counts.find(names[s]);
      const long count = it == result.split_counts.end() ? 0 : it->second;
      if (count != kOfficialSplitSizes[s]) {
        result.warnings.push_back(
            "split '" + std::string(names[s]) + "' has " +
            std::to_string(count) + " samples; the official split has " +
            std::to_string(kOfficialSplitSizes[s]));
      }
    }
  }
  return result;
}

}  // namespace parp
