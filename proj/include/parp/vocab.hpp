#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "parp/errors.hpp"

namespace parp {

// Number of anatomical regions per image; prompt slot i corresponds to
// region index i for every operation downstream.
inline constexpr int kNumRegions = 29;

// Hierarchy position of a lesion class. The shipped taxonomy has a single
// root ("lung opacity") whose subtree carries all parent/child logic;
// independent classes sit outside the tree.
enum class LesionLevel { kRoot, kSecond, kThird, kIndependent };

const char* to_string(LesionLevel level);
LesionLevel lesion_level_from_string(const std::string& s);

struct LesionClass {
  std::string name;
  LesionLevel level;
  int parent;        // taxonomy index; -1 for root and independent classes
  double frequency;  // fraction of training labels, >= 0
};

// Token surface form: lowercase, spaces and slashes mapped to underscores,
// so a rendered prompt splits unambiguously on whitespace.
std::string normalize_token(const std::string& name);

// The lesion class vocabulary with hierarchy links and training
// frequencies. Immutable after construction; indices are stable.
class LesionTaxonomy {
 public:
  explicit LesionTaxonomy(std::vector<LesionClass> classes);

  // The shipped 21-class set (one root, eight second-level, five
  // third-level, seven independent classes).
  static const LesionTaxonomy& default_taxonomy();

  int size() const { return static_cast<int>(classes_.size()); }
  const LesionClass& at(int index) const;
  const std::vector<LesionClass>& classes() const { return classes_; }

  // -1 when the name is unknown.
  int find(const std::string& name) const;
  // Throws ValidationError when the name is unknown.
  int index_of(const std::string& name) const;

  int root_index() const { return root_; }
  LesionLevel level(int index) const { return at(index).level; }
  int parent(int index) const { return at(index).parent; }
  double frequency(int index) const { return at(index).frequency; }
  const std::string& name(int index) const { return at(index).name; }
  std::string token(int index) const { return normalize_token(at(index).name); }

  bool operator==(const LesionTaxonomy& other) const;

 private:
  std::vector<LesionClass> classes_;
  std::unordered_map<std::string, int> by_name_;
  int root_ = -1;
};

// Ordered list of the 29 anatomical region names. Order is immutable once
// loaded: prompt position depends on it.
class RegionVocabulary {
 public:
  explicit RegionVocabulary(std::vector<std::string> names);

  // Region names as published in the Chest ImaGenome v1.0.0 dataset
  // documentation (the dataset's bounding-box object list).
  static const RegionVocabulary& default_vocabulary();

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int index) const;
  const std::vector<std::string>& names() const { return names_; }

  int find(const std::string& name) const;
  int index_of(const std::string& name) const;

  bool operator==(const RegionVocabulary& other) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> by_name_;
};

}  // namespace parp
