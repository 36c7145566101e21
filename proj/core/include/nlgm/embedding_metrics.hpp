#pragma once

#include <span>
#include <string>
#include <vector>

#include "nlgm/corpus.hpp"
#include "nlgm/text.hpp"

namespace nlgm {

// Similarity in [-1,1]. defined == false marks degenerate inputs (no
// in-vocabulary tokens on one side, empty sentence); value is then 0 so
// downstream consumers can exclude the row instead of averaging noise.
struct SimilarityScore {
  double value = 0.0;
  bool defined = false;
};

// u.v / (|u||v|), 0 by convention when either norm is 0.
// Throws std::invalid_argument on dimension mismatch.
double cosine(std::span<const double> u, std::span<const double> v);

struct SentenceVector {
  std::vector<double> components;
  bool defined = false;
};

// Sum of in-vocabulary word vectors divided by the norm of that sum (a unit
// vector). OOV tokens are skipped; empty or all-OOV input yields the zero
// vector flagged undefined.
SentenceVector embedding_average(const TokenSeq& seq,
                                 const EmbeddingTable& table);

// Per dimension, the max over words when max > |min|, else the min.
// Ties resolve to the max. OOV skipped; empty/all-OOV undefined.
SentenceVector vector_extrema(const TokenSeq& seq, const EmbeddingTable& table);

// G(a,b) = mean over tokens of a of the best cosine against tokens of b
// (OOV tokens contribute 0 and still count in the mean); the returned score
// is (G(hyp,ref) + G(ref,hyp)) / 2. Undefined when either side has no
// in-vocabulary token.
SimilarityScore greedy_matching(const TokenSeq& hyp, const TokenSeq& ref,
                                const EmbeddingTable& table);

enum class EmbeddingMetricKind { average, extrema, greedy };

// Multi-reference score: per-reference similarity (cosine of sentence
// vectors for average/extrema, greedy matching otherwise), maximum over
// references. Undefined iff every per-reference score is undefined.
// Throws std::invalid_argument when refs is empty.
SimilarityScore embedding_metric_score(const TokenSeq& hyp,
                                       const std::vector<TokenSeq>& refs,
                                       const EmbeddingTable& table,
                                       EmbeddingMetricKind kind);

// Max cosine between the hypothesis sentence vector and each reference
// sentence vector. Throws DataError naming any id missing from the table.
SimilarityScore skip_vector_similarity(const std::string& hyp_id,
                                       const std::vector<std::string>& ref_ids,
                                       const SentenceVectorTable& table);

}  // namespace nlgm
