#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "parp/errors.hpp"

namespace parp {

// Per-image binary vectors over a fixed observation set (14 in the shipped
// evaluation protocol; any width is accepted as long as both sides agree).
struct LabelMatrix {
  std::vector<std::string> observations;
  std::vector<std::string> image_ids;
  std::vector<std::vector<std::uint8_t>> rows;

  std::size_t num_images() const { return rows.size(); }
  std::size_t num_observations() const { return observations.size(); }
};

void validate_label_matrix(const LabelMatrix& m);

enum class CeAveraging { kMicro, kMacro, kExample };

const char* to_string(CeAveraging mode);

struct CeResult {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // Set when a zero denominator forced the corresponding value to 0.
  bool precision_undefined = false;
  bool recall_undefined = false;
  bool f1_undefined = false;
  CeAveraging mode = CeAveraging::kMicro;
};

// Precision/recall/F1 of candidate labels against reference labels.
// Micro counts every (image, observation) cell into one confusion tally;
// macro averages per-observation scores; example averages per-image
// scores. Undefined fractions are reported as 0 with the flag set.
CeResult ce_metrics(const LabelMatrix& candidate, const LabelMatrix& reference,
                    CeAveraging mode = CeAveraging::kMicro);

}  // namespace parp
