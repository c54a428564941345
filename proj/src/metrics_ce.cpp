#include "parp/metrics_ce.hpp"

namespace parp {

void validate_label_matrix(const LabelMatrix& m) {
  if (m.image_ids.size() != m.rows.size()) {
    throw ValidationError("label matrix: image id count does not match rows");
  }
  for (const auto& row : m.rows) {
    if (row.size() != m.observations.size()) {
      throw ValidationError("label matrix: row width does not match observations");
    }
    for (std::uint8_t v : row) {
      if (v > 1) {
        throw ValidationError("label matrix entries must be 0 or 1");
      }
    }
  }
}

const char* to_string(CeAveraging mode) {
  switch (mode) {
    case CeAveraging::kMicro:
      return "micro";
    case CeAveraging::kMacro:
      return "macro";
    case CeAveraging::kExample:
      return "example";
  }
  return "?";
}

namespace {

struct Tally {
  long tp = 0;
  long fp = 0;
  long fn = 0;
};

struct Prf {
  double p, r, f1;
  bool p_undef, r_undef, f1_undef;
};

Prf prf_from(const Tally& t) {
  Prf out{};
  out.p_undef = (t.tp + t.fp) == 0;
  out.r_undef = (t.tp + t.fn) == 0;
  out.p = out.p_undef ? 0.0 : static_cast<double>(t.tp) / (t.tp + t.fp);
  out.r = out.r_undef ? 0.0 : static_cast<double>(t.tp) / (t.tp + t.fn);
  out.f1_undef = out.p + out.r == 0.0;
  out.f1 = out.f1_undef ? 0.0 : 2.0 * out.p * out.r / (out.p + out.r);
  return out;
}

}  // namespace

CeResult ce_metrics(const LabelMatrix& candidate, const LabelMatrix& reference,
                    CeAveraging mode) {
  validate_label_matrix(candidate);
  validate_label_matrix(reference);
  if (candidate.rows.size() != reference.rows.size() ||
      candidate.num_observations() != reference.num_observations()) {
    throw ValidationError("candidate and reference label matrices must have "
                          "matching shapes");
  }
  const std::size_t n_images = candidate.rows.size();
  const std::size_t n_obs = candidate.num_observations();

  CeResult result;
  result.mode = mode;

  auto cell_tally = [&](Tally& t, std::size_t i, std::size_t j) {
    const bool cand = candidate.rows[i][j] != 0;
    const bool ref = reference.rows[i][j] != 0;
    if (cand && ref) ++t.tp;
    if (cand && !ref) ++t.fp;
    if (!cand && ref) ++t.fn;
  };

  if (mode == CeAveraging::kMicro) {
    Tally t;
    for (std::size_t i = 0; i < n_images; ++i) {
      for (std::size_t j = 0; j < n_obs; ++j) {
        cell_tally(t, i, j);
      }
    }
    const Prf prf = prf_from(t);
    result.precision = prf.p;
    result.recall = prf.r;
    result.f1 = prf.f1;
    result.precision_undefined = prf.p_undef;
    result.recall_undefined = prf.r_undef;
    result.f1_undefined = prf.f1_undef;
    return result;
  }

  // Macro: average per-observation scores. Example: average per-image
  // scores. Undefined components count as 0 and raise the flags.
  const std::size_t groups = (mode == CeAveraging::kMacro) ? n_obs : n_images;
  if (groups == 0) {
    throw ValidationError("cannot average over an empty label matrix");
  }
  double p_sum = 0.0, r_sum = 0.0, f_sum = 0.0;
  for (std::size_t g = 0; g < groups; ++g) {
    Tally t;
    if (mode == CeAveraging::kMacro) {
      for (std::size_t i = 0; i < n_images; ++i) {
        cell_tally(t, i, g);
      }
    } else {
      for (std::size_t j = 0; j < n_obs; ++j) {
        cell_tally(t, g, j);
      }
    }
    const Prf prf = prf_from(t);
    p_sum += prf.p;
    r_sum += prf.r;
    f_sum += prf.f1;
    result.precision_undefined |= prf.p_undef;
    result.recall_undefined |= prf.r_undef;
    result.f1_undefined |= prf.f1_undef;
  }
  result.precision = p_sum / static_cast<double>(groups);
  result.recall = r_sum / static_cast<double>(groups);
  result.f1 = f_sum / static_cast<double>(groups);
  return result;
}

}  // namespace parp
