#include "parp/prompts.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace parp {

std::string RegionalPrompt::rendered() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) {
      out.push_back(' ');
    }
    out += tokens[i];
  }
  return out;
}

void validate_prompt(const RegionalPrompt& prompt,
                     const LesionTaxonomy& taxonomy, int n_regions) {
  if (static_cast<int>(prompt.tokens.size()) != n_regions) {
    throw ValidationError("prompt must have exactly " +
                          std::to_string(n_regions) + " tokens, got " +
                          std::to_string(prompt.tokens.size()));
  }
  std::set<std::string> valid;
  for (int i = 0; i < taxonomy.size(); ++i) {
    valid.insert(taxonomy.token(i));
  }
  for (const std::string& tok : prompt.tokens) {
    if (tok != kNegToken && valid.find(tok) == valid.end()) {
      throw ValidationError("invalid prompt token: '" + tok + "'");
    }
  }
}

std::string select_region_token(const std::vector<int>& lesions,
                                const LesionTaxonomy& taxonomy) {
  if (lesions.empty()) {
    return kNegToken;
  }
  // Collapse the opacity branch: third-level members are represented by
  // their second-level parents, and the root is dominated whenever any
  // second-level representative is present. Independent classes always
  // stand for themselves.
  std::set<int> candidates;
  bool root_present = false;
  for (int idx : lesions) {
    switch (taxonomy.level(idx)) {
      case LesionLevel::kRoot:
        root_present = true;
        break;
      case LesionLevel::kThird:
        candidates.insert(taxonomy.parent(idx));
        break;
      case LesionLevel::kSecond:
      case LesionLevel::kIndependent:
        candidates.insert(idx);
        break;
    }
  }
  bool has_second = false;
  for (int idx : candidates) {
    if (taxonomy.level(idx) == LesionLevel::kSecond) {
      has_second = true;
      break;
    }
  }
  if (root_present && !has_second) {
    candidates.insert(taxonomy.root_index());
  }
  // Least common candidate wins; frequency ties break by lower index.
  int best = -1;
  for (int idx : candidates) {
    if (best < 0 || taxonomy.frequency(idx) < taxonomy.frequency(best)) {
      best = idx;
    }
  }
  return taxonomy.token(best);
}

RegionalPrompt build_training_prompt(const SceneGraph& sg,
                                     const RegionVocabulary& regions,
                                     const LesionTaxonomy& taxonomy) {
  RegionalPrompt prompt;
  prompt.tokens.assign(regions.size(), kNegToken);
  for (const SceneGraphRegion& r : sg.regions) {
    if (r.region_index < 0 || r.region_index >= regions.size()) {
      throw ValidationError("region index out of range in scene graph");
    }
    prompt.tokens[r.region_index] = select_region_token(r.lesions, taxonomy);
  }
  return prompt;
}

RegionAssignment assign_lesions_to_regions(
    const std::vector<RegionDetection>& region_detections,
    const std::vector<ScoredBox>& lesion_boxes, int n_regions,
    double iou_threshold) {
  if (iou_threshold < 0.0 || iou_threshold > 1.0) {
    throw ValidationError("assignment IoU threshold must be in [0,1]");
  }
  RegionAssignment assignment;
  assignment.slots.assign(n_regions, RegionAssignment::Slot{});
  for (const RegionDetection& region : region_detections) {
    if (region.region_index < 0 || region.region_index >= n_regions) {
      throw ValidationError("region index out of range in detections");
    }
    int best = -1;
    double best_iou = 0.0;
    for (std::size_t i = 0; i < lesion_boxes.size(); ++i) {
      double v = iou(region.box, lesion_boxes[i].box);
      if (v > best_iou) {
        best_iou = v;
        best = static_cast<int>(i);
      }
    }
    if (best >= 0 && best_iou >= iou_threshold) {
      assignment.slots[region.region_index] =
          RegionAssignment::Slot{best, best_iou};
    }
  }
  return assignment;
}

namespace {

std::vector<int> active_classes(const ScoredBox& box) {
  std::vector<int> out;
  for (int j = 0; j < static_cast<int>(box.class_conf.size()); ++j) {
    if (box.class_conf[j] > 0.0) {
      out.push_back(j);
    }
  }
  return out;
}

}  // namespace

RegionalPrompt build_inference_prompt(const RegionAssignment& assignment,
                                      const std::vector<ScoredBox>& lesion_boxes,
                                      const LesionTaxonomy& taxonomy,
                                      int n_regions) {
  if (static_cast<int>(assignment.slots.size()) != n_regions) {
    throw ValidationError("assignment slot count does not match region count");
  }
  RegionalPrompt prompt;
  prompt.tokens.assign(n_regions, kNegToken);
  for (int r = 0; r < n_regions; ++r) {
    const RegionAssignment::Slot& slot = assignment.slots[r];
    if (slot.lesion < 0) {
      continue;
    }
    if (slot.lesion >= static_cast<int>(lesion_boxes.size())) {
      throw ValidationError("assignment references a missing lesion box");
    }
    prompt.tokens[r] =
        select_region_token(active_classes(lesion_boxes[slot.lesion]), taxonomy);
  }
  return prompt;
}

namespace {

// Reports may themselves contain the separator; escape so the serialized
// form has exactly one standalone [SEP] token.
std::string escape_report(const std::string& report) {
  std::string out;
  out.reserve(report.size());
  for (std::size_t i = 0; i < report.size(); ++i) {
    if (report[i] == '\\') {
      out += "\\\\";
    } else if (report.compare(i, 5, kPromptSeparator) == 0) {
      out += "\\";
      out += kPromptSeparator;
      i += 4;
    } else {
      out.push_back(report[i]);
    }
  }
  return out;
}

std::string unescape_report(const std::string& escaped) {
  std::string out;
  out.reserve(escaped.size());
  for (std::size_t i = 0; i < escaped.size(); ++i) {
    if (escaped[i] == '\\' && i + 1 < escaped.size()) {
      if (escaped[i + 1] == '\\') {
        out.push_back('\\');
        i += 1;
        continue;
      }
      if (escaped.compare(i + 1, 5, kPromptSeparator) == 0) {
        out += kPromptSeparator;
        i += 5;
        continue;
      }
    }
    out.push_back(escaped[i]);
  }
  return out;
}

}  // namespace

std::string serialize_training_sample(const RegionalPrompt& prompt,
                                      const std::string& report) {
  std::string out = prompt.rendered();
  out.push_back(' ');
  out += kPromptSeparator;
  if (!report.empty()) {
    out.push_back(' ');
    out += escape_report(report);
  }
  return out;
}

std::pair<RegionalPrompt, std::string> parse_training_sample(
    const std::string& serialized, int n_regions) {
  RegionalPrompt prompt;
  std::size_t pos = 0;
  for (int i = 0; i < n_regions; ++i) {
    std::size_t end = serialized.find(' ', pos);
    if (end == std::string::npos || end == pos) {
      throw ValidationError("serialized sample has fewer than " +
                            std::to_string(n_regions) + " prompt tokens");
    }
    prompt.tokens.push_back(serialized.substr(pos, end - pos));
    pos = end + 1;
  }
  std::size_t sep_end = serialized.find(' ', pos);
  std::string sep = serialized.substr(
      pos, sep_end == std::string::npos ? std::string::npos : sep_end - pos);
  if (sep != kPromptSeparator) {
    throw ValidationError("serialized sample is missing the separator token");
  }
  std::string report;
  if (sep_end != std::string::npos) {
    report = unescape_report(serialized.substr(sep_end + 1));
  }
  return {std::move(prompt), std::move(report)};
}

namespace {

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) {
      out += (i + 1 == names.size()) ? " and " : ", ";
    }
    out += names[i];
  }
  return out;
}

}  // namespace

std::string build_text_prompt_ablation(const RegionAssignment& assignment,
                                       const std::vector<ScoredBox>& lesion_boxes,
                                       const RegionVocabulary& regions,
                                       const LesionTaxonomy& taxonomy) {
  if (static_cast<int>(assignment.slots.size()) != regions.size()) {
    throw ValidationError("assignment slot count does not match region count");
  }
  // Invert the assignment to lesion -> region set, then group lesions that
  // share the exact same regions onto one line.
  std::map<int, std::vector<int>> regions_of_lesion;
  for (int r = 0; r < regions.size(); ++r) {
    const RegionAssignment::Slot& slot = assignment.slots[r];
    if (slot.lesion < 0) {
      continue;
    }
    for (int c : active_classes(lesion_boxes[slot.lesion])) {
      regions_of_lesion[c].push_back(r);
    }
  }
  std::vector<std::pair<std::vector<int>, std::vector<int>>> groups;  // regions, lesions
  for (const auto& [lesion, region_list] : regions_of_lesion) {
    auto group = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
      return g.first == region_list;
    });
    if (group == groups.end()) {
      groups.push_back({region_list, {lesion}});
    } else {
      group->second.push_back(lesion);
    }
  }

  std::string out =
      "Please generate a report for this chest x-ray image. "
      "Here are some initial findings:";
  int line = 0;
  for (const auto& [region_list, lesions] : groups) {
    std::vector<std::string> lesion_names;
    for (int c : lesions) {
      lesion_names.push_back(taxonomy.name(c));
    }
    std::vector<std::string> region_names;
    for (int r : region_list) {
      region_names.push_back(regions.name(r));
    }
    out += "\n" + std::to_string(++line) + ". " + join_names(lesion_names) +
           " may be present in the " + join_names(region_names) + ".";
  }
  return out;
}

}  // namespace parp
