#include "parp/taxonomy_ops.hpp"

#include <algorithm>

namespace parp {

RawLabelStats make_label_stats(
    std::vector<std::pair<std::string, std::int64_t>> counts,
    std::int64_t total) {
  std::int64_t sum = 0;
  for (const auto& [name, count] : counts) {
    if (name.empty()) {
      throw ValidationError("label stats class names must be nonempty");
    }
    if (count < 0) {
      throw ValidationError("label stats counts must be >= 0");
    }
    sum += count;
  }
  if (total != 0 && total != sum) {
    throw ValidationError("label stats total (" + std::to_string(total) +
                          ") does not match the sum of counts (" +
                          std::to_string(sum) + ")");
  }
  return RawLabelStats{std::move(counts), sum};
}

std::vector<std::string> filter_tail_classes(const RawLabelStats& stats,
                                             double threshold) {
  if (!(threshold > 0.0) || !(threshold < 1.0)) {
    throw ValidationError("tail threshold must be in (0, 1)");
  }
  if (stats.total <= 0) {
    throw ValidationError("cannot filter tail classes of an empty corpus");
  }
  std::vector<std::string> retained;
  for (const auto& [name, count] : stats.counts) {
    if (static_cast<double>(count) / static_cast<double>(stats.total) >=
        threshold) {
      retained.push_back(name);
    }
  }
  return retained;
}

std::vector<int> remove_root_redundancy(const std::vector<int>& region_labels,
                                        const LesionTaxonomy& taxonomy) {
  bool has_third = false;
  for (int idx : region_labels) {
    if (taxonomy.level(idx) == LesionLevel::kThird) {
      has_third = true;
      break;
    }
  }
  std::vector<int> out;
  out.reserve(region_labels.size());
  for (int idx : region_labels) {
    (void)taxonomy.at(idx);
    if (has_third && idx == taxonomy.root_index()) {
      continue;
    }
    out.push_back(idx);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LesionLevel classify_level(const LesionTaxonomy& taxonomy, int class_index) {
  return taxonomy.level(class_index);
}

}  // namespace parp
