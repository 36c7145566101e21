#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "nlgm/corpus.hpp"
#include "nlgm/embedding_metrics.hpp"
#include "nlgm/overlap_metrics.hpp"
#include "nlgm/text.hpp"

namespace nlgm {

enum class Metric {
  bleu,               // sentence bleu-1..max_n plus pooled corpus bleu
  meteor,
  rouge_l,
  embedding_average,
  vector_extrema,
  greedy_matching,
  skip_thought,       // cosine over precomputed sentence vectors
};

std::string metric_name(Metric m);

struct EvalConfig {
  std::set<Metric> metrics = {Metric::bleu, Metric::meteor, Metric::rouge_l};
  bool lowercase = true;
  int threads = 1;

  BleuConfig corpus_bleu_cfg;    // pooled; default smoothing none
  BleuConfig sentence_bleu_cfg;  // per instance; default add-one smoothing
  MeteorConfig meteor_cfg;
  RougeConfig rouge_cfg;

  EvalConfig() {
    sentence_bleu_cfg.smoothing = BleuSmoothing::add_one_higher_order;
  }
};

struct InstanceScore {
  double value = 0.0;
  bool defined = false;
};

// Per-instance and corpus-level scores for each enabled metric. For
// per-sentence metrics the corpus level is the arithmetic mean of defined
// per-instance scores; pooled corpus BLEU is reported under separate
// "corpus-bleu-n" keys.
struct MetricReport {
  int schema_version = 1;
  EvalConfig config;
  // instance id -> metric key -> score
  std::map<std::string, std::map<std::string, InstanceScore>> per_instance;
  std::map<std::string, double> corpus_level;
  std::map<std::string, std::size_t> undefined_counts;
  std::vector<std::string> warnings;
};

// Runs every enabled metric over the corpus. Deterministic: repeated calls
// produce byte-identical JSON regardless of cfg.threads. skip_thought
// expects the hypothesis vector under the instance id and reference k under
// "<id>::ref<k>". Throws std::invalid_argument when a table required by an
// enabled metric is missing, DataError on an empty corpus.
MetricReport evaluate(const Corpus& corpus, const EvalConfig& cfg,
                      const EmbeddingTable* embeddings = nullptr,
                      const SentenceVectorTable* sentence_vectors = nullptr,
                      const SynonymLexicon* lexicon = nullptr);

std::string report_to_json(const MetricReport& report, bool pretty = false);

// Reads back the per-instance section of a serialized report:
// metric key -> item id -> value, defined scores only.
std::map<std::string, std::map<std::string, double>> load_report_metric_scores(
    std::istream& in);

}  // namespace nlgm
