#include "parp/vocab.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace parp {

const char* to_string(LesionLevel level) {
  switch (level) {
    case LesionLevel::kRoot:
      return "root";
    case LesionLevel::kSecond:
      return "second";
    case LesionLevel::kThird:
      return "third";
    case LesionLevel::kIndependent:
      return "independent";
  }
  return "?";
}

LesionLevel lesion_level_from_string(const std::string& s) {
  if (s == "root") return LesionLevel::kRoot;
  if (s == "second") return LesionLevel::kSecond;
  if (s == "third") return LesionLevel::kThird;
  if (s == "independent") return LesionLevel::kIndependent;
  throw ConfigError("unknown lesion level: '" + s + "'");
}

std::string normalize_token(const std::string& name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    if (c == ' ' || c == '/') {
      out.push_back('_');
    } else {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

LesionTaxonomy::LesionTaxonomy(std::vector<LesionClass> classes)
    : classes_(std::move(classes)) {
  if (classes_.empty()) {
    throw ConfigError("taxonomy must contain at least one class");
  }
  for (int i = 0; i < size(); ++i) {
    const LesionClass& c = classes_[i];
    if (c.name.empty()) {
      throw ConfigError("taxonomy class names must be nonempty");
    }
    if (!by_name_.emplace(c.name, i).second) {
      throw ConfigError("duplicate taxonomy class name: '" + c.name + "'");
    }
    if (!(c.frequency >= 0.0) || !std::isfinite(c.frequency)) {
      throw ConfigError("class frequencies must be finite and >= 0");
    }
    if (c.level == LesionLevel::kRoot) {
      if (root_ >= 0) {
        throw ConfigError("taxonomy must have exactly one root class");
      }
      root_ = i;
    }
  }
  if (root_ < 0) {
    throw ConfigError("taxonomy must have exactly one root class");
  }
  for (int i = 0; i < size(); ++i) {
    const LesionClass& c = classes_[i];
    switch (c.level) {
      case LesionLevel::kRoot:
      case LesionLevel::kIndependent:
        if (c.parent != -1) {
          throw ConfigError("class '" + c.name + "' must not have a parent");
        }
        break;
      case LesionLevel::kSecond:
        if (c.parent != root_) {
          throw ConfigError("second-level class '" + c.name +
                            "' must have the root as parent");
        }
        break;
      case LesionLevel::kThird:
        if (c.parent < 0 || c.parent >= size() ||
            classes_[c.parent].level != LesionLevel::kSecond) {
          throw ConfigError("third-level class '" + c.name +
                            "' must have a second-level parent");
        }
        break;
    }
  }
}

const LesionClass& LesionTaxonomy::at(int index) const {
  if (index < 0 || index >= size()) {
    throw ValidationError("lesion class index out of range: " +
                          std::to_string(index));
  }
  return classes_[index];
}

int LesionTaxonomy::find(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? -1 : it->second;
}

int LesionTaxonomy::index_of(const std::string& name) const {
  int idx = find(name);
  if (idx < 0) {
    throw ValidationError("unknown lesion name: '" + name + "'");
  }
  return idx;
}

bool LesionTaxonomy::operator==(const LesionTaxonomy& other) const {
  if (size() != other.size()) return false;
  for (int i = 0; i < size(); ++i) {
    const LesionClass& a = classes_[i];
    const LesionClass& b = other.classes_[i];
    if (a.name != b.name || a.level != b.level || a.parent != b.parent ||
        a.frequency != b.frequency) {
      return false;
    }
  }
  return true;
}

const LesionTaxonomy& LesionTaxonomy::default_taxonomy() {
  // Index order follows the shipped per-class results table. Parent links
  // for the five third-level classes live in the editable config as well;
  // frequencies are indicative long-tail defaults except for pneumothorax
  // (0.82%) and hyperaeration (0.59%), which are pinned.
  static const LesionTaxonomy tax([] {
    const int kRootIdx = 0;
    auto root = [&](const char* n, double f) {
      return LesionClass{n, LesionLevel::kRoot, -1, f};
    };
    auto second = [&](const char* n, double f) {
      return LesionClass{n, LesionLevel::kSecond, kRootIdx, f};
    };
    auto third = [&](const char* n, int parent, double f) {
      return LesionClass{n, LesionLevel::kThird, parent, f};
    };
    auto indep = [&](const char* n, double f) {
      return LesionClass{n, LesionLevel::kIndependent, -1, f};
    };
    std::vector<LesionClass> c;
    c.push_back(root("lung opacity", 0.24));                      // 0
    c.push_back(second("airspace opacity", 0.078));               // 1
    c.push_back(second("consolidation", 0.056));                  // 2
    c.push_back(second("atelectasis", 0.088));                    // 3
    c.push_back(third("linear/patchy atelectasis", 3, 0.021));    // 4
    c.push_back(third("lobar/segmental/collapse", 3, 0.013));     // 5
    c.push_back(second("pulmonary edema/hazy opacity", 0.077));   // 6
    c.push_back(second("vascular congestion", 0.042));            // 7
    c.push_back(third("vascular redistribution", 7, 0.0071));     // 8
    c.push_back(second("pleural effusion", 0.10));                // 9
    c.push_back(third("costophrenic angle blunting", 9, 0.016));  // 10
    c.push_back(second("pleural/parenchymal scarring", 0.031));   // 11
    c.push_back(indep("enlarged cardiac silhouette", 0.079));     // 12
    c.push_back(indep("mediastinal widening", 0.012));            // 13
    c.push_back(indep("enlarged hilum", 0.014));                  // 14
    c.push_back(indep("tortuous aorta", 0.026));                  // 15
    c.push_back(indep("vascular calcification", 0.023));          // 16
    c.push_back(indep("pneumothorax", 0.0082));                   // 17
    c.push_back(second("lung lesion", 0.037));                    // 18
    c.push_back(third("mass/nodule", 18, 0.015));                 // 19
    c.push_back(indep("hyperaeration", 0.0059));                  // 20
    return c;
  }());
  return tax;
}

RegionVocabulary::RegionVocabulary(std::vector<std::string> names)
    : names_(std::move(names)) {
  if (static_cast<int>(names_.size()) != kNumRegions) {
    throw ConfigError("region vocabulary must contain exactly " +
                      std::to_string(kNumRegions) + " entries, got " +
                      std::to_string(names_.size()));
  }
  for (int i = 0; i < size(); ++i) {
    if (names_[i].empty()) {
      throw ConfigError("region names must be nonempty");
    }
    if (!by_name_.emplace(names_[i], i).second) {
      throw ConfigError("duplicate region name: '" + names_[i] + "'");
    }
  }
}

const std::string& RegionVocabulary::name(int index) const {
  if (index < 0 || index >= size()) {
    throw ValidationError("region index out of range: " + std::to_string(index));
  }
  return names_[index];
}

int RegionVocabulary::find(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? -1 : it->second;
}

int RegionVocabulary::index_of(const std::string& name) const {
  int idx = find(name);
  if (idx < 0) {
    throw ValidationError("unknown region name: '" + name + "'");
  }
  return idx;
}

bool RegionVocabulary::operator==(const RegionVocabulary& other) const {
  return names_ == other.names_;
}

const RegionVocabulary& RegionVocabulary::default_vocabulary() {
  static const RegionVocabulary vocab(std::vector<std::string>{
      "right lung",
      "right upper lung zone",
      "right mid lung zone",
      "right lower lung zone",
      "right hilar structures",
      "right apical zone",
      "right costophrenic angle",
      "right hemidiaphragm",
      "left lung",
      "left upper lung zone",
      "left mid lung zone",
      "left lower lung zone",
      "left hilar structures",
      "left apical zone",
      "left costophrenic angle",
      "left hemidiaphragm",
      "trachea",
      "spine",
      "right clavicle",
      "left clavicle",
      "aortic arch",
      "mediastinum",
      "upper mediastinum",
      "svc",
      "cardiac silhouette",
      "cavoatrial junction",
      "right atrium",
      "carina",
      "abdomen",
  });
  return vocab;
}

}  // namespace parp
