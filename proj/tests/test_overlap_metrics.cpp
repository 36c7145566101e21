#include <doctest.h>

#include <cmath>
#include <random>

#include "nlgm/error.hpp"
#include "nlgm/overlap_metrics.hpp"

using namespace nlgm;

namespace {

TokenSeq random_tokens(std::mt19937_64& rng, std::size_t min_len,
                       std::size_t max_len) {
  static const std::vector<std::string> vocab = {"the",  "cat",  "sat",
                                                 "down", "a",    "dog",
                                                 "ran",  "fast"};
  TokenSeq seq;
  const std::size_t len = min_len + rng() % (max_len - min_len + 1);
  for (std::size_t i = 0; i < len; ++i) {
    seq.push_back(vocab[rng() % vocab.size()]);
  }
  return seq;
}

BleuConfig smoothed_bleu(int n) {
  BleuConfig cfg;
  cfg.max_n = n;
  cfg.smoothing = BleuSmoothing::add_one_higher_order;
  return cfg;
}

}  // namespace

TEST_CASE("corpus_bleu: identity corpus scores exactly 1 for N=1..4") {
  const std::vector<TokenSeq> hyps = {
      {"the", "cat", "sat", "down"},
      {"a", "dog", "ran"},
      {"the", "dog", "ran", "fast", "down"},
  };
  std::vector<std::vector<TokenSeq>> refs;
  for (const TokenSeq& h : hyps) refs.push_back({h});
  for (int n = 1; n <= 4; ++n) {
    BleuConfig cfg;
    cfg.max_n = n;
    CHECK(corpus_bleu(hyps, refs, cfg) == 1.0);
  }
}

TEST_CASE("corpus_bleu: brevity penalty hand value") {
  // p1 = p2 = p3 = 1, BP = exp(1 - 4/3)
  const std::vector<TokenSeq> hyps = {{"the", "cat", "sat"}};
  const std::vector<std::vector<TokenSeq>> refs = {
      {{"the", "cat", "sat", "down"}}};
  BleuConfig cfg;
  cfg.max_n = 3;
  CHECK(corpus_bleu(hyps, refs, cfg) ==
        doctest::Approx(std::exp(-1.0 / 3.0)).epsilon(1e-9));
}

TEST_CASE("corpus_bleu: zero overlap scores 0") {
  const std::vector<TokenSeq> hyps = {{"x", "y"}};
  const std::vector<std::vector<TokenSeq>> refs = {{{"a", "b"}}};
  for (int n = 1; n <= 4; ++n) {
    BleuConfig cfg;
    cfg.max_n = n;
    CHECK(corpus_bleu(hyps, refs, cfg) == 0.0);
  }
}

TEST_CASE("corpus_bleu errors") {
  CHECK_THROWS_AS(corpus_bleu({}, {}, BleuConfig{}), DataError);
  const std::vector<TokenSeq> empty_hyp = {{}};
  const std::vector<std::vector<TokenSeq>> refs = {{{"a"}}};
  CHECK_THROWS_AS(corpus_bleu(empty_hyp, refs, BleuConfig{}), DataError);
  BleuConfig bad;
  bad.max_n = 5;
  CHECK_THROWS_AS(corpus_bleu(empty_hyp, refs, bad), std::invalid_argument);
  BleuConfig bad_weights;
  bad_weights.weights = {0.5, 0.6};
  bad_weights.max_n = 2;
  const std::vector<TokenSeq> hyps = {{"a"}};
  CHECK_THROWS_AS(corpus_bleu(hyps, refs, bad_weights), std::invalid_argument);
}

TEST_CASE("corpus_bleu: closest reference length, ties toward shorter") {
  // hyp length 3; refs of length 2 and 4 tie on |diff| = 1, so r = 2 and
  // c > r means BP = 1.
  const std::vector<TokenSeq> hyps = {{"the", "cat", "sat"}};
  const std::vector<std::vector<TokenSeq>> refs = {
      {{"the", "cat"}, {"the", "cat", "sat", "down"}}};
  BleuConfig cfg;
  cfg.max_n = 1;
  CHECK(corpus_bleu(hyps, refs, cfg) == 1.0);
}

TEST_CASE("sentence_bleu: identity is exactly 1 with and without smoothing") {
  const TokenSeq hyp = {"the", "cat", "sat", "down"};
  for (int n = 1; n <= 4; ++n) {
    BleuConfig plain;
    plain.max_n = n;
    CHECK(sentence_bleu(hyp, {hyp}, plain) == 1.0);
    CHECK(sentence_bleu(hyp, {hyp}, smoothed_bleu(n)) == 1.0);
  }
  // identity shorter than max_n still scores 1 under smoothing
  const TokenSeq brief = {"the", "cat"};
  CHECK(sentence_bleu(brief, {brief}, smoothed_bleu(4)) == 1.0);
}

TEST_CASE("sentence_bleu: smoothed hand value") {
  // p1 = 1/2 unsmoothed, p2 = (0+1)/(1+1); BP = 1 -> sqrt(0.25) = 0.5
  const TokenSeq hyp = {"a", "b"};
  const std::vector<TokenSeq> refs = {{"a", "c"}};
  CHECK(sentence_bleu(hyp, refs, smoothed_bleu(2)) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("sentence_bleu: multi-reference picks the best reference") {
  const TokenSeq hyp = {"a", "b"};
  const std::vector<TokenSeq> refs = {{"a", "c"}, {"a", "b"}};
  CHECK(sentence_bleu(hyp, refs, smoothed_bleu(2)) == 1.0);
}

TEST_CASE("sentence_bleu: empty hypothesis scores 0, empty refs throw") {
  CHECK(sentence_bleu({}, {{"a"}}, BleuConfig{}) == 0.0);
  CHECK_THROWS_AS(sentence_bleu({"a"}, {}, BleuConfig{}),
                  std::invalid_argument);
}

TEST_CASE("corpus_bleu equals sentence_bleu on a single-reference instance") {
  std::mt19937_64 rng(17);
  BleuConfig cfg;  // smoothing none for both paths
  for (int trial = 0; trial < 200; ++trial) {
    const TokenSeq hyp = random_tokens(rng, 1, 8);
    const TokenSeq ref = random_tokens(rng, 1, 8);
    const double pooled = corpus_bleu({hyp}, {{ref}}, cfg);
    const double sentence = sentence_bleu(hyp, {ref}, cfg);
    CHECK(pooled == doctest::Approx(sentence).epsilon(1e-12));
  }
}

TEST_CASE("meteor: identity over four tokens") {
  const TokenSeq hyp = {"the", "cat", "sat", "down"};
  // F_mean = 1, one chunk, penalty = 0.5 * (1/4)^3
  CHECK(meteor(hyp, {hyp}) == doctest::Approx(1.0 - 1.0 / 128.0).epsilon(1e-12));
}

TEST_CASE("meteor: zero matches scores 0") {
  CHECK(meteor({"x", "y"}, {{"a", "b"}}) == 0.0);
  CHECK(meteor({}, {{"a"}}) == 0.0);
}

TEST_CASE("meteor: synonym stage matches through the lexicon") {
  SynonymLexicon lex;
  lex.add_group({"cheap", "inexpensive"});
  const TokenSeq hyp = {"cheap", "food"};
  const std::vector<TokenSeq> refs = {{"inexpensive", "food"}};
  // m = 2 (one exact, one synonym), P = R = 1, ch = 1,
  // score = 1 - 0.5 * (1/2)^3
  CHECK(meteor(hyp, refs, MeteorConfig{}, lex) ==
        doctest::Approx(0.9375).epsilon(1e-12));
  // without the lexicon only "food" aligns
  CHECK(meteor(hyp, refs) < 0.9375);
}

TEST_CASE("meteor: stem stage aligns inflected forms") {
  const TokenSeq hyp = {"looking", "good"};
  const std::vector<TokenSeq> refs = {{"looked", "good"}};
  const MeteorAlignment alignment =
      meteor_align(hyp, refs[0], MeteorConfig{}, SynonymLexicon{});
  CHECK(alignment.matches == 2);
  CHECK(alignment.chunks == 1);
}

TEST_CASE("meteor_align: chunk counting") {
  const MeteorConfig cfg;
  const SynonymLexicon lex;
  // contiguous in hyp but not in ref -> two chunks
  const MeteorAlignment gap =
      meteor_align({"a", "x", "b"}, {"a", "b"}, cfg, lex);
  CHECK(gap.matches == 2);
  CHECK(gap.chunks == 2);
  // crossed order breaks contiguity as well
  const MeteorAlignment crossed =
      meteor_align({"b", "a"}, {"a", "b"}, cfg, lex);
  CHECK(crossed.matches == 2);
  CHECK(crossed.chunks == 2);
  const MeteorAlignment whole =
      meteor_align({"a", "b", "c"}, {"a", "b", "c"}, cfg, lex);
  CHECK(whole.matches == 3);
  CHECK(whole.chunks == 1);
}

TEST_CASE("rouge_l: hand values") {
  const TokenSeq hyp = {"the", "cat", "sat"};
  const std::vector<TokenSeq> refs = {{"the", "cat", "sat", "down"}};
  // lcs = 3, P = 1, R = 0.75, beta = 1.2
  CHECK(rouge_l(hyp, refs) == doctest::Approx(0.8356164384).epsilon(1e-9));
  CHECK(rouge_l(hyp, {hyp}) == 1.0);
  CHECK(rouge_l({"x"}, {{"a"}}) == 0.0);
  CHECK(rouge_l({}, {{"a"}}) == 0.0);
  CHECK_THROWS_AS(rouge_l(hyp, {}), std::invalid_argument);
}

TEST_CASE("multi-reference monotonicity: appending a reference never hurts") {
  std::mt19937_64 rng(29);
  SynonymLexicon lex;
  lex.add_group({"cat", "dog"});
  for (int trial = 0; trial < 300; ++trial) {
    const TokenSeq hyp = random_tokens(rng, 0, 7);
    std::vector<TokenSeq> refs = {random_tokens(rng, 1, 7)};
    double prev_bleu = sentence_bleu(hyp, refs, smoothed_bleu(4));
    double prev_meteor = meteor(hyp, refs, MeteorConfig{}, lex);
    double prev_rouge = rouge_l(hyp, refs);
    for (int extra = 0; extra < 3; ++extra) {
      refs.push_back(random_tokens(rng, 1, 7));
      const double cur_bleu = sentence_bleu(hyp, refs, smoothed_bleu(4));
      const double cur_meteor = meteor(hyp, refs, MeteorConfig{}, lex);
      const double cur_rouge = rouge_l(hyp, refs);
      CHECK(cur_bleu >= prev_bleu - 1e-12);
      CHECK(cur_meteor >= prev_meteor - 1e-12);
      CHECK(cur_rouge >= prev_rouge - 1e-12);
      prev_bleu = cur_bleu;
      prev_meteor = cur_meteor;
      prev_rouge = cur_rouge;
    }
  }
}

TEST_CASE("meteor and rouge_l are invariant under duplicated references") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const TokenSeq hyp = random_tokens(rng, 1, 7);
    std::vector<TokenSeq> refs = {random_tokens(rng, 1, 7),
                                  random_tokens(rng, 1, 7)};
    const double m = meteor(hyp, refs);
    const double r = rouge_l(hyp, refs);
    refs.push_back(refs.front());
    CHECK(meteor(hyp, refs) == m);
    CHECK(rouge_l(hyp, refs) == r);
  }
}

TEST_CASE("all overlap scores stay in [0,1]") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 300; ++trial) {
    const TokenSeq hyp = random_tokens(rng, 0, 8);
    const std::vector<TokenSeq> refs = {random_tokens(rng, 1, 8),
                                        random_tokens(rng, 1, 8)};
    for (double score :
         {sentence_bleu(hyp, refs, smoothed_bleu(4)),
          sentence_bleu(hyp, refs, BleuConfig{}), meteor(hyp, refs),
          rouge_l(hyp, refs)}) {
      CHECK(score >= 0.0);
      CHECK(score <= 1.0);
    }
  }
}
