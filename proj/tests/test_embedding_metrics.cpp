#include <doctest.h>

#include <cmath>
#include <random>

#include "nlgm/embedding_metrics.hpp"
#include "nlgm/error.hpp"
#include "nlgm/rng.hpp"

using namespace nlgm;

namespace {

EmbeddingTable make_table(
    const std::vector<std::pair<std::string, std::vector<double>>>& entries) {
  EmbeddingTable table;
  for (const auto& [word, vec] : entries) {
    table.insert(word, vec);
  }
  return table;
}

const std::vector<std::string> kVocab = {"a", "b", "c", "d", "e", "f"};

double cos_of(const std::vector<double>& u, const std::vector<double>& v) {
  return cosine(u, v);
}

EmbeddingTable random_table(std::mt19937_64& rng, std::size_t dim) {
  EmbeddingTable table;
  for (const std::string& word : kVocab) {
    std::vector<double> vec(dim);
    for (double& x : vec) x = gaussian(rng);
    table.insert(word, vec);
  }
  return table;
}

TokenSeq random_sentence(std::mt19937_64& rng, std::size_t min_len,
                         std::size_t max_len) {
  TokenSeq seq;
  const std::size_t len = min_len + rng() % (max_len - min_len + 1);
  for (std::size_t i = 0; i < len; ++i) {
    seq.push_back(kVocab[rng() % kVocab.size()]);
  }
  return seq;
}

}  // namespace

TEST_CASE("cosine basics") {
  const std::vector<double> u = {3.0, 4.0};
  CHECK(cos_of(u, u) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cos_of({1.0, 0.0}, {0.0, 1.0}) == 0.0);
  CHECK(cos_of({0.0, 0.0}, u) == 0.0);  // zero norm convention
  CHECK(cos_of({1.0, 0.0}, {-1.0, 0.0}) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(cos_of({1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("embedding_average normalizes the summed vector") {
  const EmbeddingTable table = make_table({{"a", {3.0, 4.0}},
                                           {"b", {0.0, 1.0}},
                                           {"c", {1.0, 0.0}}});
  const SentenceVector single = embedding_average({"a"}, table);
  REQUIRE(single.defined);
  CHECK(single.components[0] == doctest::Approx(0.6));
  CHECK(single.components[1] == doctest::Approx(0.8));

  const SentenceVector pair = embedding_average({"c", "b"}, table);
  REQUIRE(pair.defined);
  CHECK(pair.components[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(pair.components[1] == doctest::Approx(1.0 / std::sqrt(2.0)));

  // OOV tokens are skipped, not zeros in the mean
  const SentenceVector skip = embedding_average({"a", "zzz"}, table);
  REQUIRE(skip.defined);
  CHECK(skip.components[0] == doctest::Approx(0.6));

  const SentenceVector oov = embedding_average({"zzz"}, table);
  CHECK_FALSE(oov.defined);
  CHECK(oov.components == std::vector<double>{0.0, 0.0});
  CHECK_FALSE(embedding_average({}, table).defined);
}

TEST_CASE("vector_extrema picks the dominant magnitude per dimension") {
  const EmbeddingTable table = make_table({{"a", {1.0, -2.0}},
                                           {"b", {-3.0, 0.5}},
                                           {"c", {2.0, 0.0}},
                                           {"d", {-1.0, 0.0}}});
  const SentenceVector own = vector_extrema({"a"}, table);
  REQUIRE(own.defined);
  CHECK(own.components == std::vector<double>{1.0, -2.0});

  const SentenceVector mixed = vector_extrema({"a", "b"}, table);
  CHECK(mixed.components == std::vector<double>{-3.0, -2.0});

  const SentenceVector positive = vector_extrema({"c", "d"}, table);
  CHECK(positive.components == std::vector<double>{2.0, 0.0});

  CHECK_FALSE(vector_extrema({"zzz"}, table).defined);
}

TEST_CASE("vector_extrema tie resolves to the max") {
  const EmbeddingTable table = make_table({{"a", {1.0}}, {"b", {-1.0}}});
  CHECK(vector_extrema({"a", "b"}, table).components ==
        std::vector<double>{1.0});
}

TEST_CASE("greedy_matching hand values") {
  const EmbeddingTable table =
      make_table({{"a", {1.0, 0.0}}, {"b", {0.0, 1.0}}});
  const SimilarityScore identity = greedy_matching({"a", "b"}, {"a", "b"}, table);
  REQUIRE(identity.defined);
  CHECK(identity.value == doctest::Approx(1.0));

  // G(hyp,ref) = 1, G(ref,hyp) = (1+0)/2
  const SimilarityScore partial = greedy_matching({"a"}, {"a", "b"}, table);
  REQUIRE(partial.defined);
  CHECK(partial.value == doctest::Approx(0.75));

  CHECK_FALSE(greedy_matching({}, {"a"}, table).defined);
  CHECK_FALSE(greedy_matching({"zzz"}, {"a"}, table).defined);
  CHECK(greedy_matching({"zzz"}, {"a"}, table).value == 0.0);
}

TEST_CASE("greedy_matching counts OOV hypothesis tokens in the mean") {
  const EmbeddingTable table =
      make_table({{"a", {1.0, 0.0}}, {"b", {0.0, 1.0}}});
  // hyp: a matches 1.0, zzz contributes 0, mean 0.5; reverse G = 1.0
  const SimilarityScore score = greedy_matching({"a", "zzz"}, {"a"}, table);
  REQUIRE(score.defined);
  CHECK(score.value == doctest::Approx(0.75));
}

TEST_CASE("greedy_matching is symmetric") {
  std::mt19937_64 rng(41);
  const EmbeddingTable table = random_table(rng, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const TokenSeq x = random_sentence(rng, 1, 6);
    const TokenSeq y = random_sentence(rng, 1, 6);
    const SimilarityScore xy = greedy_matching(x, y, table);
    const SimilarityScore yx = greedy_matching(y, x, table);
    CHECK(xy.defined == yx.defined);
    CHECK(xy.value == doctest::Approx(yx.value).epsilon(1e-12));
    CHECK(xy.value >= -1.0);
    CHECK(xy.value <= 1.0);
  }
}

TEST_CASE("embedding_metric_score: identity reference wins the max") {
  std::mt19937_64 rng(43);
  const EmbeddingTable table = random_table(rng, 3);
  const TokenSeq hyp = {"a", "b", "c"};
  const std::vector<TokenSeq> refs = {{"d", "e"}, hyp};
  for (EmbeddingMetricKind kind :
       {EmbeddingMetricKind::average, EmbeddingMetricKind::extrema,
        EmbeddingMetricKind::greedy}) {
    const SimilarityScore score = embedding_metric_score(hyp, refs, table, kind);
    REQUIRE(score.defined);
    CHECK(score.value == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("embedding_metric_score: undefined propagation and errors") {
  const EmbeddingTable table = make_table({{"a", {1.0, 0.0}}});
  const SimilarityScore oov = embedding_metric_score(
      {"zzz"}, {{"yyy"}}, table, EmbeddingMetricKind::average);
  CHECK_FALSE(oov.defined);
  CHECK(oov.value == 0.0);
  // one undefined reference does not poison the max
  const SimilarityScore mixed = embedding_metric_score(
      {"a"}, {{"yyy"}, {"a"}}, table, EmbeddingMetricKind::average);
  REQUIRE(mixed.defined);
  CHECK(mixed.value == doctest::Approx(1.0));
  CHECK_THROWS_AS(
      embedding_metric_score({"a"}, {}, table, EmbeddingMetricKind::average),
      std::invalid_argument);
}

TEST_CASE("embedding_metric_score: max over per-reference scores") {
  const EmbeddingTable table = make_table(
      {{"a", {1.0, 0.0}}, {"b", {0.0, 1.0}}, {"m", {1.0, 1.0}}});
  const TokenSeq hyp = {"a"};
  // cos(a, b) = 0, cos(a, m) = 1/sqrt(2)
  const SimilarityScore score = embedding_metric_score(
      hyp, {{"b"}, {"m"}}, table, EmbeddingMetricKind::average);
  REQUIRE(score.defined);
  CHECK(score.value == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("skip_vector_similarity") {
  SentenceVectorTable table;
  table.insert("h", {1.0, 0.0});
  table.insert("r0", {0.0, 1.0});
  table.insert("r1", {1.0, 0.0});
  CHECK(skip_vector_similarity("h", {"r1"}, table).value ==
        doctest::Approx(1.0));
  CHECK(skip_vector_similarity("h", {"r0"}, table).value ==
        doctest::Approx(0.0));
  const SimilarityScore best = skip_vector_similarity("h", {"r0", "r1"}, table);
  CHECK(best.value == doctest::Approx(1.0));
  CHECK_THROWS_WITH_AS(skip_vector_similarity("h", {"nope"}, table),
                       doctest::Contains("nope"), DataError);
  CHECK_THROWS_WITH_AS(skip_vector_similarity("ghost", {"r0"}, table),
                       doctest::Contains("ghost"), DataError);
}

TEST_CASE("scaling the table by a positive constant changes nothing") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const EmbeddingTable table = random_table(rng, 4);
    EmbeddingTable scaled;
    const double factor = 0.25 + (rng() % 100) * 0.1;
    for (const auto& [word, vec] : table.entries()) {
      std::vector<double> scaled_vec = vec;
      for (double& x : scaled_vec) x *= factor;
      scaled.insert(word, scaled_vec);
    }
    const TokenSeq hyp = random_sentence(rng, 1, 6);
    const std::vector<TokenSeq> refs = {random_sentence(rng, 1, 6)};
    for (EmbeddingMetricKind kind :
         {EmbeddingMetricKind::average, EmbeddingMetricKind::extrema,
          EmbeddingMetricKind::greedy}) {
      const SimilarityScore base = embedding_metric_score(hyp, refs, table, kind);
      const SimilarityScore after =
          embedding_metric_score(hyp, refs, scaled, kind);
      CHECK(base.defined == after.defined);
      CHECK(base.value == doctest::Approx(after.value).epsilon(1e-9));
    }
  }
}

TEST_CASE("word order never enters the embedding metrics") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const EmbeddingTable table = random_table(rng, 4);
    TokenSeq hyp = random_sentence(rng, 2, 6);
    const std::vector<TokenSeq> refs = {random_sentence(rng, 1, 6)};
    TokenSeq shuffled = hyp;
    nlgm::shuffle(shuffled, rng);
    for (EmbeddingMetricKind kind :
         {EmbeddingMetricKind::average, EmbeddingMetricKind::extrema,
          EmbeddingMetricKind::greedy}) {
      const SimilarityScore base = embedding_metric_score(hyp, refs, table, kind);
      const SimilarityScore after =
          embedding_metric_score(shuffled, refs, table, kind);
      CHECK(base.defined == after.defined);
      CHECK(base.value == doctest::Approx(after.value).epsilon(1e-12));
    }
  }
}

TEST_CASE("appending a reference never lowers an embedding metric") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    const EmbeddingTable table = random_table(rng, 4);
    const TokenSeq hyp = random_sentence(rng, 1, 6);
    std::vector<TokenSeq> refs = {random_sentence(rng, 1, 6)};
    for (EmbeddingMetricKind kind :
         {EmbeddingMetricKind::average, EmbeddingMetricKind::extrema,
          EmbeddingMetricKind::greedy}) {
      const SimilarityScore before =
          embedding_metric_score(hyp, refs, table, kind);
      auto extended = refs;
      extended.push_back(random_sentence(rng, 1, 6));
      const SimilarityScore after =
          embedding_metric_score(hyp, extended, table, kind);
      if (before.defined) {
        CHECK(after.value >= before.value - 1e-12);
      }
    }
  }
}
