#include "nlgm/embedding_metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "nlgm/error.hpp"

namespace nlgm {

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("cosine: dimension mismatch (" +
                                std::to_string(u.size()) + " vs " +
                                std::to_string(v.size()) + ")");
  }
  double dot = 0.0, norm_u = 0.0, norm_v = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    norm_u += u[i] * u[i];
    norm_v += v[i] * v[i];
  }
  if (norm_u == 0.0 || norm_v == 0.0) return 0.0;
  return dot / (std::sqrt(norm_u) * std::sqrt(norm_v));
}

SentenceVector embedding_average(const TokenSeq& seq,
                                 const EmbeddingTable& table) {
  SentenceVector result;
  result.components.assign(table.dim(), 0.0);
  bool any = false;
  for (const std::string& token : seq) {
    if (const std::vector<double>* vec = table.find(token)) {
      for (std::size_t d = 0; d < vec->size(); ++d) {
        result.components[d] += (*vec)[d];
      }
      any = true;
    }
  }
  if (!any) return result;  // zero vector, undefined
  double norm = 0.0;
  for (double x : result.components) norm += x * x;
  norm = std::sqrt(norm);
  if (norm > 0.0) {
    for (double& x : result.components) x /= norm;
  }
  result.defined = true;
  return result;
}

SentenceVector vector_extrema(const TokenSeq& seq,
                              const EmbeddingTable& table) {
  SentenceVector result;
  result.components.assign(table.dim(), 0.0);
  std::vector<double> max_vals(table.dim(), 0.0);
  std::vector<double> min_vals(table.dim(), 0.0);
  bool any = false;
  for (const std::string& token : seq) {
    const std::vector<double>* vec = table.find(token);
    if (vec == nullptr) continue;
    if (!any) {
      max_vals = *vec;
      min_vals = *vec;
      any = true;
      continue;
    }
    for (std::size_t d = 0; d < vec->size(); ++d) {
      max_vals[d] = std::max(max_vals[d], (*vec)[d]);
      min_vals[d] = std::min(min_vals[d], (*vec)[d]);
    }
  }
  if (!any) return result;
  for (std::size_t d = 0; d < table.dim(); ++d) {
    // max wins a tie against |min|
    result.components[d] =
        max_vals[d] >= std::abs(min_vals[d]) ? max_vals[d] : min_vals[d];
  }
  result.defined = true;
  return result;
}

namespace {

// Mean over a's tokens of the best cosine against b's tokens; OOV tokens of
// a contribute 0 but stay in the denominator.
double directed_greedy(const TokenSeq& a, const TokenSeq& b,
                       const EmbeddingTable& table) {
  double sum = 0.0;
  for (const std::string& token : a) {
    const std::vector<double>* e_a = table.find(token);
    if (e_a == nullptr) continue;
    double best = 0.0;  // an OOV counterpart offers similarity 0
    for (const std::string& other : b) {
      if (const std::vector<double>* e_b = table.find(other)) {
        best = std::max(best, cosine(*e_a, *e_b));
      }
    }
    sum += best;
  }
  return sum / static_cast<double>(a.size());
}

bool has_in_vocab_token(const TokenSeq& seq, const EmbeddingTable& table) {
  for (const std::string& token : seq) {
    if (table.find(token) != nullptr) return true;
  }
  return false;
}

}  // namespace

SimilarityScore greedy_matching(const TokenSeq& hyp, const TokenSeq& ref,
                                const EmbeddingTable& table) {
  if (hyp.empty() || ref.empty() || !has_in_vocab_token(hyp, table) ||
      !has_in_vocab_token(ref, table)) {
    return {};
  }
  const double forward = directed_greedy(hyp, ref, table);
  const double backward = directed_greedy(ref, hyp, table);
  return {(forward + backward) / 2.0, true};
}

SimilarityScore embedding_metric_score(const TokenSeq& hyp,
                                       const std::vector<TokenSeq>& refs,
                                       const EmbeddingTable& table,
                                       EmbeddingMetricKind kind) {
  if (refs.empty()) {
    throw std::invalid_argument("embedding_metric_score: refs must be non-empty");
  }
  SimilarityScore best;
  auto consider = [&best](const SimilarityScore& score) {
    if (!score.defined) return;
    if (!best.defined || score.value > best.value) best = score;
  };
  if (kind == EmbeddingMetricKind::greedy) {
    for (const TokenSeq& ref : refs) {
      consider(greedy_matching(hyp, ref, table));
    }
    return best;
  }
  const auto sentence_vector = [&](const TokenSeq& seq) {
    return kind == EmbeddingMetricKind::average ? embedding_average(seq, table)
                                                : vector_extrema(seq, table);
  };
  const SentenceVector hyp_vec = sentence_vector(hyp);
  if (!hyp_vec.defined) return best;
  for (const TokenSeq& ref : refs) {
    const SentenceVector ref_vec = sentence_vector(ref);
    if (!ref_vec.defined) continue;
    consider({cosine(hyp_vec.components, ref_vec.components), true});
  }
  return best;
}

SimilarityScore skip_vector_similarity(const std::string& hyp_id,
                                       const std::vector<std::string>& ref_ids,
                                       const SentenceVectorTable& table) {
  if (ref_ids.empty()) {
    throw std::invalid_argument("skip_vector_similarity: no reference ids");
  }
  const std::vector<double>* hyp_vec = table.find(hyp_id);
  if (hyp_vec == nullptr) {
    throw DataError("sentence vector missing for id \"" + hyp_id + "\"");
  }
  SimilarityScore best;
  for (const std::string& ref_id : ref_ids) {
    const std::vector<double>* ref_vec = table.find(ref_id);
    if (ref_vec == nullptr) {
      throw DataError("sentence vector missing for id \"" + ref_id + "\"");
    }
    const double value = cosine(*hyp_vec, *ref_vec);
    if (!best.defined || value > best.value) best = {value, true};
  }
  return best;
}

}  // namespace nlgm
