#pragma once

#include <string>
#include <vector>

#include "parp/errors.hpp"

namespace parp {

// One scored pair: the generated report and its reference.
struct CorpusSample {
  std::string image_id;
  std::string candidate;
  std::string reference;
};

using Corpus = std::vector<CorpusSample>;

// Throws ValidationError when the corpus is empty or ids repeat.
void validate_corpus(const Corpus& corpus);

// Lowercase; alphanumeric runs become tokens and every other
// non-whitespace character becomes its own single-character token.
std::vector<std::string> tokenize_report(const std::string& text);

// Light suffix stripper used by the stem stage of the METEOR variant:
// plural endings, -ing/-ed, and a final silent e.
std::string stem_token(const std::string& token);

struct BleuOptions {
  // Add-one smoothing of the order>1 modified precisions. Off by default;
  // scores with smoothing on are not comparable to unsmoothed ones.
  bool add_one_smoothing = false;
};

// Corpus-level BLEU with uniform weights over orders 1..max_order and the
// standard brevity penalty. Returns 0 when any order has no match (unless
// smoothing is enabled).
double bleu_n(const Corpus& corpus, int max_order,
              const BleuOptions& options = {});

// Mean over samples of the LCS-based F-measure with weight beta^2
// (recall-leaning 1.44 by default).
double rouge_l(const Corpus& corpus, double beta2 = 1.44);

struct MeteorOptions {
  double alpha = 0.9;  // F-mean precision weight
  double beta = 3.0;   // fragmentation penalty exponent
  double gamma = 0.5;  // fragmentation penalty scale
};

// Self-contained METEOR variant: exact then stemmed unigram alignment, no
// synonym stage. Mean over samples of Fmean * (1 - penalty).
double meteor_variant(const Corpus& corpus, const MeteorOptions& options = {});

}  // namespace parp
