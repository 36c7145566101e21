#include "nlgm/overlap_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "nlgm/error.hpp"

namespace nlgm {

namespace {

constexpr double kWeightSumTolerance = 1e-12;

// Per-reference "closest" length; ties resolve to the shorter reference
// (the harsher brevity penalty).
std::size_t closest_ref_length(std::size_t hyp_len,
                               const std::vector<TokenSeq>& refs) {
  std::size_t best_len = refs.front().size();
  for (const TokenSeq& ref : refs) {
    const std::size_t len = ref.size();
    const auto diff = [&](std::size_t l) {
      return l > hyp_len ? l - hyp_len : hyp_len - l;
    };
    if (diff(len) < diff(best_len) ||
        (diff(len) == diff(best_len) && len < best_len)) {
      best_len = len;
    }
  }
  return best_len;
}

double brevity_penalty(std::size_t c, std::size_t r) {
  if (c > r) return 1.0;
  return std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));
}

struct PrecisionCounts {
  std::size_t matched = 0;
  std::size_t total = 0;
};

// Modified n-gram precision counts: per n-gram, hypothesis count clipped at
// the maximum occurrence count across the instance's references.
PrecisionCounts clipped_counts(const TokenSeq& hyp,
                               const std::vector<TokenSeq>& refs, int n) {
  PrecisionCounts counts;
  const NgramCounts hyp_counts = ngrams(hyp, n);
  std::vector<NgramCounts> ref_counts;
  ref_counts.reserve(refs.size());
  for (const TokenSeq& ref : refs) {
    ref_counts.push_back(ngrams(ref, n));
  }
  for (const auto& [gram, count] : hyp_counts) {
    counts.total += static_cast<std::size_t>(count);
    int clip = 0;
    for (const NgramCounts& rc : ref_counts) {
      auto it = rc.find(gram);
      if (it != rc.end()) clip = std::max(clip, it->second);
    }
    counts.matched += static_cast<std::size_t>(std::min(count, clip));
  }
  return counts;
}

double precision_value(const PrecisionCounts& counts, int n,
                       BleuSmoothing smoothing) {
  if (smoothing == BleuSmoothing::add_one_higher_order && n >= 2) {
    return (static_cast<double>(counts.matched) + 1.0) /
           (static_cast<double>(counts.total) + 1.0);
  }
  if (counts.total == 0) return 0.0;
  return static_cast<double>(counts.matched) /
         static_cast<double>(counts.total);
}

double combine(const std::vector<double>& precisions,
               const std::vector<double>& weights, double bp) {
  double log_sum = 0.0;
  for (std::size_t i = 0; i < precisions.size(); ++i) {
    if (precisions[i] <= 0.0) return 0.0;
    log_sum += weights[i] * std::log(precisions[i]);
  }
  return bp * std::exp(log_sum);
}

double single_reference_bleu(const TokenSeq& hyp, const TokenSeq& ref,
                             const BleuConfig& cfg,
                             const std::vector<double>& weights) {
  if (hyp.empty()) return 0.0;
  std::vector<double> precisions;
  precisions.reserve(static_cast<std::size_t>(cfg.max_n));
  const std::vector<TokenSeq> refs{ref};
  for (int n = 1; n <= cfg.max_n; ++n) {
    precisions.push_back(
        precision_value(clipped_counts(hyp, refs, n), n, cfg.smoothing));
  }
  return combine(precisions, weights, brevity_penalty(hyp.size(), ref.size()));
}

}  // namespace

std::vector<double> BleuConfig::effective_weights() const {
  if (!weights.empty()) return weights;
  return std::vector<double>(static_cast<std::size_t>(max_n), 1.0 / max_n);
}

void BleuConfig::validate() const {
  if (max_n < 1 || max_n > 4) {
    throw std::invalid_argument("BleuConfig: max_n must be in [1,4]");
  }
  if (!weights.empty()) {
    if (weights.size() != static_cast<std::size_t>(max_n)) {
      throw std::invalid_argument("BleuConfig: need exactly max_n weights");
    }
    double sum = 0.0;
    for (double w : weights) {
      if (w < 0.0) {
        throw std::invalid_argument("BleuConfig: weights must be >= 0");
      }
      sum += w;
    }
    if (std::abs(sum - 1.0) > kWeightSumTolerance) {
      throw std::invalid_argument("BleuConfig: weights must sum to 1");
    }
  }
}

void MeteorConfig::validate() const {
  if (recall_weight <= 0.0) {
    throw std::invalid_argument("MeteorConfig: recall_weight must be > 0");
  }
  if (penalty_gamma < 0.0 || penalty_gamma > 1.0) {
    throw std::invalid_argument("MeteorConfig: gamma must be in [0,1]");
  }
  if (penalty_theta <= 0.0) {
    throw std::invalid_argument("MeteorConfig: theta must be > 0");
  }
  if (stages.empty()) {
    throw std::invalid_argument("MeteorConfig: at least one matcher stage");
  }
}

void RougeConfig::validate() const {
  if (beta <= 0.0) {
    throw std::invalid_argument("RougeConfig: beta must be > 0");
  }
}

double corpus_bleu(const std::vector<TokenSeq>& hyps,
                   const std::vector<std::vector<TokenSeq>>& refs,
                   const BleuConfig& cfg) {
  cfg.validate();
  if (hyps.size() != refs.size()) {
    throw std::invalid_argument("corpus_bleu: hyps/refs size mismatch");
  }
  if (hyps.empty()) {
    throw DataError("corpus_bleu: empty corpus");
  }
  const std::vector<double> weights = cfg.effective_weights();

  std::vector<PrecisionCounts> pooled(static_cast<std::size_t>(cfg.max_n));
  std::size_t c = 0;  // total hypothesis length
  std::size_t r = 0;  // total closest reference length
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    if (refs[i].empty()) {
      throw std::invalid_argument("corpus_bleu: instance " +
                                  std::to_string(i) + " has no references");
    }
    c += hyps[i].size();
    r += closest_ref_length(hyps[i].size(), refs[i]);
    for (int n = 1; n <= cfg.max_n; ++n) {
      const PrecisionCounts counts = clipped_counts(hyps[i], refs[i], n);
      pooled[static_cast<std::size_t>(n - 1)].matched += counts.matched;
      pooled[static_cast<std::size_t>(n - 1)].total += counts.total;
    }
  }
  if (c == 0) {
    throw DataError("corpus_bleu: all hypotheses are empty");
  }
  std::vector<double> precisions;
  precisions.reserve(pooled.size());
  for (int n = 1; n <= cfg.max_n; ++n) {
    precisions.push_back(precision_value(pooled[static_cast<std::size_t>(n - 1)],
                                         n, cfg.smoothing));
  }
  return combine(precisions, weights, brevity_penalty(c, r));
}

double corpus_bleu(const Corpus& corpus, const BleuConfig& cfg,
                   bool lowercase) {
  std::vector<TokenSeq> hyps;
  std::vector<std::vector<TokenSeq>> refs;
  hyps.reserve(corpus.size());
  refs.reserve(corpus.size());
  for (const EvalInstance& inst : corpus.instances) {
    hyps.push_back(tokenize(inst.hypothesis, lowercase));
    std::vector<TokenSeq> ref_seqs;
    ref_seqs.reserve(inst.references.size());
    for (const std::string& ref : inst.references) {
      ref_seqs.push_back(tokenize(ref, lowercase));
    }
    refs.push_back(std::move(ref_seqs));
  }
  return corpus_bleu(hyps, refs, cfg);
}

double sentence_bleu(const TokenSeq& hyp, const std::vector<TokenSeq>& refs,
                     const BleuConfig& cfg) {
  cfg.validate();
  if (refs.empty()) {
    throw std::invalid_argument("sentence_bleu: refs must be non-empty");
  }
  if (hyp.empty()) return 0.0;
  const std::vector<double> weights = cfg.effective_weights();
  // One score per reference, keep the best (multi-reference scores can only
  // grow as references are added).
  double best = 0.0;
  for (const TokenSeq& ref : refs) {
    best = std::max(best, single_reference_bleu(hyp, ref, cfg, weights));
  }
  return best;
}

MeteorAlignment meteor_align(const TokenSeq& hyp, const TokenSeq& ref,
                             const MeteorConfig& cfg,
                             const SynonymLexicon& lex) {
  // hyp position -> matched ref position
  std::vector<int> hyp_match(hyp.size(), -1);
  std::vector<bool> ref_used(ref.size(), false);

  std::vector<std::string> hyp_stems;
  std::vector<std::string> ref_stems;
  for (MatcherStage stage : cfg.stages) {
    if (stage == MatcherStage::stem && hyp_stems.empty()) {
      hyp_stems.reserve(hyp.size());
      for (const std::string& t : hyp) hyp_stems.push_back(stem(t));
      ref_stems.reserve(ref.size());
      for (const std::string& t : ref) ref_stems.push_back(stem(t));
    }
    for (std::size_t i = 0; i < hyp.size(); ++i) {
      if (hyp_match[i] >= 0) continue;
      for (std::size_t j = 0; j < ref.size(); ++j) {
        if (ref_used[j]) continue;
        bool hit = false;
        switch (stage) {
          case MatcherStage::exact:
            hit = hyp[i] == ref[j];
            break;
          case MatcherStage::stem:
            hit = hyp_stems[i] == ref_stems[j];
            break;
          case MatcherStage::synonym:
            hit = synonym_match(hyp[i], ref[j], lex);
            break;
        }
        if (hit) {
          hyp_match[i] = static_cast<int>(j);
          ref_used[j] = true;
          break;
        }
      }
    }
  }

  MeteorAlignment result;
  int prev_i = -2;
  int prev_j = -2;
  for (std::size_t i = 0; i < hyp.size(); ++i) {
    if (hyp_match[i] < 0) continue;
    ++result.matches;
    // a chunk extends while both sides stay contiguous and monotone
    if (static_cast<int>(i) != prev_i + 1 || hyp_match[i] != prev_j + 1) {
      ++result.chunks;
    }
    prev_i = static_cast<int>(i);
    prev_j = hyp_match[i];
  }
  return result;
}

double meteor(const TokenSeq& hyp, const std::vector<TokenSeq>& refs,
              const MeteorConfig& cfg, const SynonymLexicon& lex) {
  cfg.validate();
  if (refs.empty()) {
    throw std::invalid_argument("meteor: refs must be non-empty");
  }
  if (hyp.empty()) return 0.0;
  const double alpha = cfg.alpha();
  double best = 0.0;
  for (const TokenSeq& ref : refs) {
    if (ref.empty()) continue;
    const MeteorAlignment alignment = meteor_align(hyp, ref, cfg, lex);
    if (alignment.matches == 0) continue;
    const double m = alignment.matches;
    const double precision = m / static_cast<double>(hyp.size());
    const double recall = m / static_cast<double>(ref.size());
    const double f_mean =
        precision * recall / (alpha * precision + (1.0 - alpha) * recall);
    const double penalty =
        cfg.penalty_gamma *
        std::pow(static_cast<double>(alignment.chunks) / m, cfg.penalty_theta);
    best = std::max(best, f_mean * (1.0 - penalty));
  }
  return best;
}

double rouge_l(const TokenSeq& hyp, const std::vector<TokenSeq>& refs,
               const RougeConfig& cfg) {
  cfg.validate();
  if (refs.empty()) {
    throw std::invalid_argument("rouge_l: refs must be non-empty");
  }
  if (hyp.empty()) return 0.0;
  const double beta_sq = cfg.beta * cfg.beta;
  double best = 0.0;
  for (const TokenSeq& ref : refs) {
    if (ref.empty()) continue;
    const auto lcs = static_cast<double>(lcs_length(hyp, ref));
    if (lcs == 0.0) continue;
    const double precision = lcs / static_cast<double>(hyp.size());
    const double recall = lcs / static_cast<double>(ref.size());
    const double f = (1.0 + beta_sq) * precision * recall /
                     (recall + beta_sq * precision);
    best = std::max(best, f);
  }
  return best;
}

}  // namespace nlgm
