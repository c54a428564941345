#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "parp/vocab.hpp"

namespace parp {

// Per-class occurrence counts over a training corpus (original class
// vocabulary, before reduction). total must equal the sum of counts.
struct RawLabelStats {
  std::vector<std::pair<std::string, std::int64_t>> counts;
  std::int64_t total = 0;
};

// Validates counts >= 0 and total == sum(counts); when total is zero it is
// recomputed from the counts.
RawLabelStats make_label_stats(
    std::vector<std::pair<std::string, std::int64_t>> counts,
    std::int64_t total = 0);

// Classes whose fraction of the total label count reaches the threshold.
// The returned list preserves the stats order. Monotone in the threshold:
// a larger threshold never retains more classes.
std::vector<std::string> filter_tail_classes(const RawLabelStats& stats,
                                             double threshold = 0.005);

// Drops the root class from a region's label set whenever a third-level
// class is present; all non-root members are retained. Idempotent. Input
// and output are sorted unique index sets.
std::vector<int> remove_root_redundancy(const std::vector<int>& region_labels,
                                        const LesionTaxonomy& taxonomy);

// Hierarchy position of a class index; throws on unknown indices.
LesionLevel classify_level(const LesionTaxonomy& taxonomy, int class_index);

}  // namespace parp
