#include "parp/metrics_nlg.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

namespace parp {

void validate_corpus(const Corpus& corpus) {
  if (corpus.empty()) {
    throw ValidationError("corpus must be nonempty");
  }
  std::set<std::string> ids;
  for (const CorpusSample& s : corpus) {
    if (!ids.insert(s.image_id).second) {
      throw ValidationError("duplicate corpus image id: '" + s.image_id + "'");
    }
  }
}

std::vector<std::string> tokenize_report(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(current);
      current.clear();
    }
  };
  for (char raw : text) {
    unsigned char c = static_cast<unsigned char>(raw);
    if (std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (std::isspace(c)) {
      flush();
    } else {
      flush();
      tokens.push_back(std::string(1, raw));
    }
  }
  flush();
  return tokens;
}

std::string stem_token(const std::string& token) {
  std::string s = token;
  auto ends_with = [&](const char* suffix) {
    std::size_t n = std::char_traits<char>::length(suffix);
    return s.size() >= n && s.compare(s.size() - n, n, suffix) == 0;
  };
  // Plurals.
  if (ends_with("sses")) {
    s.erase(s.size() - 2);
  } else if (ends_with("ies") && s.size() > 4) {
    s.erase(s.size() - 2);
  } else if (ends_with("s") && !ends_with("ss") && !ends_with("us") &&
             s.size() > 3) {
    s.erase(s.size() - 1);
  }
  // Progressive / past endings.
  if (ends_with("ing") && s.size() > 5) {
    s.erase(s.size() - 3);
  } else if (ends_with("ed") && s.size() > 4) {
    s.erase(s.size() - 2);
  }
  // Silent e.
  if (s.size() > 3 && s.back() == 'e') {
    s.pop_back();
  }
  return s;
}

namespace {

using NgramCounts = std::unordered_map<std::string, long>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, int order) {
  NgramCounts counts;
  if (static_cast<int>(tokens.size()) < order) {
    return counts;
  }
  for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
    std::string key;
    for (int k = 0; k < order; ++k) {
      if (k > 0) {
        key.push_back('\x1f');
      }
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

double bleu_n(const Corpus& corpus, int max_order, const BleuOptions& options) {
  validate_corpus(corpus);
  if (max_order < 1 || max_order > 9) {
    throw ValidationError("BLEU order must be in [1,9]");
  }
  std::vector<long> matched(max_order, 0);
  std::vector<long> total(max_order, 0);
  long candidate_len = 0;
  long reference_len = 0;
  for (const CorpusSample& s : corpus) {
    const auto cand = tokenize_report(s.candidate);
    const auto ref = tokenize_report(s.reference);
    candidate_len += static_cast<long>(cand.size());
    reference_len += static_cast<long>(ref.size());
    for (int order = 1; order <= max_order; ++order) {
      const NgramCounts cand_counts = count_ngrams(cand, order);
      const NgramCounts ref_counts = count_ngrams(ref, order);
      for (const auto& [gram, count] : cand_counts) {
        auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) {
          matched[order - 1] += std::min(count, it->second);
        }
        total[order - 1] += count;
      }
    }
  }
  if (candidate_len == 0) {
    return 0.0;
  }
  double log_precision = 0.0;
  for (int order = 1; order <= max_order; ++order) {
    double num = static_cast<double>(matched[order - 1]);
    double den = static_cast<double>(total[order - 1]);
    if (options.add_one_smoothing && order > 1) {
      num += 1.0;
      den += 1.0;
    }
    if (num <= 0.0 || den <= 0.0) {
      return 0.0;
    }
    log_precision += std::log(num / den);
  }
  double brevity = 1.0;
  if (candidate_len < reference_len) {
    brevity = std::exp(1.0 - static_cast<double>(reference_len) /
                                 static_cast<double>(candidate_len));
  }
  return brevity * std::exp(log_precision / max_order);
}

namespace {

long lcs_length(const std::vector<std::string>& a,
                const std::vector<std::string>& b) {
  if (a.empty() || b.empty()) {
    return 0;
  }
  std::vector<long> prev(b.size() + 1, 0);
  std::vector<long> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = (a[i - 1] == b[j - 1]) ? prev[j - 1] + 1
                                      : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

double rouge_l(const Corpus& corpus, double beta2) {
  validate_corpus(corpus);
  if (!(beta2 >= 0.0) || !std::isfinite(beta2)) {
    throw ValidationError("ROUGE-L beta^2 must be finite and >= 0");
  }
  double sum = 0.0;
  for (const CorpusSample& s : corpus) {
    const auto cand = tokenize_report(s.candidate);
    const auto ref = tokenize_report(s.reference);
    const long lcs = lcs_length(cand, ref);
    if (lcs == 0 || cand.empty() || ref.empty()) {
      continue;
    }
    const double p = static_cast<double>(lcs) / static_cast<double>(cand.size());
    const double r = static_cast<double>(lcs) / static_cast<double>(ref.size());
    sum += (1.0 + beta2) * p * r / (r + beta2 * p);
  }
  return sum / static_cast<double>(corpus.size());
}

namespace {

struct Alignment {
  long matches = 0;
  long chunks = 0;
  std::size_t candidate_len = 0;
  std::size_t reference_len = 0;
};

// Exact stage first, then a stem stage over leftovers; within a stage each
// candidate token takes the earliest unmatched reference position.
Alignment align_unigrams(const std::vector<std::string>& cand,
                         const std::vector<std::string>& ref) {
  Alignment a;
  a.candidate_len = cand.size();
  a.reference_len = ref.size();
  std::vector<int> match_of(cand.size(), -1);
  std::vector<bool> ref_used(ref.size(), false);

  auto run_stage = [&](auto&& key) {
    std::unordered_map<std::string, std::vector<std::size_t>> ref_positions;
    for (std::size_t j = 0; j < ref.size(); ++j) {
      if (!ref_used[j]) {
        ref_positions[key(ref[j])].push_back(j);
      }
    }
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (match_of[i] >= 0) {
        continue;
      }
      auto it = ref_positions.find(key(cand[i]));
      if (it == ref_positions.end()) {
        continue;
      }
      auto& slots = it->second;
      auto free_slot = std::find_if(slots.begin(), slots.end(), [&](std::size_t j) {
        return !ref_used[j];
      });
      if (free_slot != slots.end()) {
        match_of[i] = static_cast<int>(*free_slot);
        ref_used[*free_slot] = true;
      }
    }
  };
  run_stage([](const std::string& t) { return t; });
  run_stage([](const std::string& t) { return stem_token(t); });

  int prev_cand = -2;
  int prev_ref = -2;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (match_of[i] < 0) {
      continue;
    }
    ++a.matches;
    if (static_cast<int>(i) != prev_cand + 1 || match_of[i] != prev_ref + 1) {
      ++a.chunks;
    }
    prev_cand = static_cast<int>(i);
    prev_ref = match_of[i];
  }
  return a;
}

}  // namespace

double meteor_variant(const Corpus& corpus, const MeteorOptions& options) {
  validate_corpus(corpus);
  double sum = 0.0;
  for (const CorpusSample& s : corpus) {
    const Alignment a =
        align_unigrams(tokenize_report(s.candidate), tokenize_report(s.reference));
    if (a.matches == 0 || a.candidate_len == 0 || a.reference_len == 0) {
      continue;
    }
    const double m = static_cast<double>(a.matches);
    const double p = m / static_cast<double>(a.candidate_len);
    const double r = m / static_cast<double>(a.reference_len);
    const double fmean = p * r / (options.alpha * p + (1.0 - options.alpha) * r);
    const double penalty =
        options.gamma *
        std::pow(static_cast<double>(a.chunks) / m, options.beta);
    sum += fmean * (1.0 - penalty);
  }
  return sum / static_cast<double>(corpus.size());
}

}  // namespace parp
