#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "parp/metrics_ce.hpp"
#include "parp/metrics_expert.hpp"
#include "parp/metrics_nlg.hpp"
#include "parp/prompts.hpp"
#include "parp/scene_graph.hpp"
#include "parp/simulate.hpp"
#include "parp/squeeze_loss.hpp"
#include "parp/taxonomy_ops.hpp"
#include "parp/vocab.hpp"

namespace parp {

using json = nlohmann::json;

// Version stamped on every emitted document. Parsers accept documents
// without the field and reject any other version.
inline constexpr int kSchemaVersion = 1;

json load_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& doc);

// ---- Config schemas -------------------------------------------------------

RegionVocabulary parse_region_vocabulary(const json& doc);
json region_vocabulary_to_json(const RegionVocabulary& vocab);

LesionTaxonomy parse_taxonomy(const json& doc);
json taxonomy_to_json(const LesionTaxonomy& taxonomy);

// Layout entries are keyed by region name and must cover the vocabulary.
RegionLayout parse_region_layout(const json& doc, const RegionVocabulary& vocab);
json region_layout_to_json(const RegionLayout& layout,
                           const RegionVocabulary& vocab);

NoiseConfig parse_noise_config(const json& doc);
json noise_config_to_json(const NoiseConfig& config);

// ---- Data schemas ---------------------------------------------------------

// Scene-graph and detection files hold one document per image; a file may
// be a wrapped {"schema_version", "items": [...]} object, a bare array, or
// a single document.
std::vector<RawSceneGraph> parse_scene_graph_file(const json& doc);
json scene_graphs_to_json(const std::vector<RawSceneGraph>& graphs);
json scene_graph_to_raw_json(const SceneGraph& sg, const RegionVocabulary& vocab,
                             const LesionTaxonomy& taxonomy);

std::vector<RawDetectionSet> parse_detection_file(const json& doc);
json detections_to_json(const std::vector<DetectionSet>& sets,
                        const RegionVocabulary& vocab,
                        const LesionTaxonomy& taxonomy);

// Prompt records: {"image_id", "tokens", "rendered"}.
json prompts_to_json(const std::vector<std::string>& image_ids,
                     const std::vector<RegionalPrompt>& prompts);

// Text records ({"image_id", "text"}) used for NLG candidate/reference files.
std::vector<std::pair<std::string, std::string>> parse_text_records(const json& doc);

// Joins candidate and reference records on image id; every candidate must
// have a reference.
Corpus join_corpus(const std::vector<std::pair<std::string, std::string>>& candidates,
                   const std::vector<std::pair<std::string, std::string>>& references);

LabelMatrix parse_label_matrix(const json& doc);

std::vector<ExpertScore> parse_expert_scores(const json& doc);

RawLabelStats parse_label_stats(const json& doc);

// Single-label annotation file: per image, rows of {"class", "bbox_xywh"}.
struct SingleLabelImage {
  std::string image_id;
  std::vector<SingleLabelRow> rows;
};
std::vector<SingleLabelImage> parse_single_label_file(const json& doc,
                                                      const LesionTaxonomy& taxonomy);
json multi_label_to_json(const std::vector<std::pair<std::string, std::vector<MultiLabelBox>>>& images,
                         const LesionTaxonomy& taxonomy);

// ---- Ingestion ------------------------------------------------------------

struct IngestOptions {
  bool require_findings = true;
  double negative_keep_fraction = 0.12;
  std::uint64_t seed = 0;
};

struct IngestResult {
  std::vector<std::size_t> kept;  // indices into the input, input order
  long total = 0;
  long dropped_missing_findings = 0;
  long negatives_before = 0;
  long negatives_kept = 0;
  std::map<std::string, long> split_counts;  // splits of kept samples
  std::vector<std::string> warnings;
};

// Dataset filtering: optionally drops samples without a findings section,
// then keeps exactly floor(fraction * n) of the negative images (empty
// lesion sets everywhere), chosen by hash-of-id order under the seed so
// the choice is independent of file order. Every sample is validated
// against the vocabularies first.
IngestResult ingest_dataset(const std::vector<RawSceneGraph>& samples,
                            const RegionVocabulary& vocab,
                            const LesionTaxonomy& taxonomy,
                            const IngestOptions& options,
                            const std::map<std::string, std::string>* split_map = nullptr);

// Official split sizes checked (warning only) when a split map is given.
inline constexpr long kOfficialSplitSizes[3] = {113915, 15658, 32711};

}  // namespace parp
