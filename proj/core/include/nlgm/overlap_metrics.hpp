#pragma once

#include <vector>

#include "nlgm/corpus.hpp"
#include "nlgm/text.hpp"

namespace nlgm {

enum class BleuSmoothing {
  none,
  // (matches+1)/(total+1) for orders n >= 2. Keeps an identical hypothesis
  // at exactly 1.0 while avoiding hard zeros on short sentences.
  add_one_higher_order,
};

struct BleuConfig {
  int max_n = 4;                    // the N of BLEU-N, in [1,4]
  std::vector<double> weights;      // empty -> uniform 1/max_n
  BleuSmoothing smoothing = BleuSmoothing::none;

  std::vector<double> effective_weights() const;
  void validate() const;  // throws std::invalid_argument
};

enum class MatcherStage { exact, stem, synonym };

struct MeteorConfig {
  double recall_weight = 9.0;  // alpha = recall_weight / (recall_weight + 1)
  double penalty_gamma = 0.5;
  double penalty_theta = 3.0;
  std::vector<MatcherStage> stages = {MatcherStage::exact, MatcherStage::stem,
                                      MatcherStage::synonym};

  double alpha() const { return recall_weight / (recall_weight + 1.0); }
  void validate() const;
};

struct RougeConfig {
  double beta = 1.2;  // recall emphasis in the LCS F-measure

  void validate() const;
};

// Corpus-level BLEU: modified n-gram precisions pooled over all instances
// (per-instance clip = max occurrence count across that instance's
// references), brevity penalty from total hypothesis length vs the sum of
// per-instance closest reference lengths (ties broken toward the shorter
// reference). Returns 0 if any pooled precision is 0 and smoothing is off.
// Throws DataError on an empty corpus or all-empty hypotheses.
double corpus_bleu(const std::vector<TokenSeq>& hyps,
                   const std::vector<std::vector<TokenSeq>>& refs,
                   const BleuConfig& cfg = {});
double corpus_bleu(const Corpus& corpus, const BleuConfig& cfg = {},
                   bool lowercase = true);

// Sentence-level BLEU. Multiple references are handled by scoring against
// each reference one-by-one and keeping the maximum, so appending a
// reference can never lower the score. An empty hypothesis scores 0.
double sentence_bleu(const TokenSeq& hyp, const std::vector<TokenSeq>& refs,
                     const BleuConfig& cfg = {});

// Unigram alignment statistics behind the METEOR score, per reference.
struct MeteorAlignment {
  int matches = 0;  // hypothesis unigrams mapped to a reference unigram
  int chunks = 0;   // maximal runs contiguous in both sentences
};

// Staged greedy alignment: each stage (exact, then stem, then synonym)
// scans hypothesis tokens left to right and maps each unmatched one to the
// leftmost unmatched reference token it matches. This is a documented
// approximation of the original minimal-chunk search; chunk counts can
// differ slightly from reference implementations.
MeteorAlignment meteor_align(const TokenSeq& hyp, const TokenSeq& ref,
                             const MeteorConfig& cfg,
                             const SynonymLexicon& lex);

// METEOR: F_mean * (1 - penalty) with F_mean = P*R / (alpha*P + (1-alpha)*R)
// and penalty = gamma * (chunks/matches)^theta; maximum over references.
// Zero matches give score 0.
double meteor(const TokenSeq& hyp, const std::vector<TokenSeq>& refs,
              const MeteorConfig& cfg = {}, const SynonymLexicon& lex = {});

// ROUGE-L: LCS-based F-measure (1+beta^2)PR / (R + beta^2 P), maximum over
// references. 0 when the LCS is empty.
double rouge_l(const TokenSeq& hyp, const std::vector<TokenSeq>& refs,
               const RougeConfig& cfg = {});

}  // namespace nlgm
