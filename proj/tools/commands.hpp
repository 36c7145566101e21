#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlgm::cli {

// Flag combinations the parser cannot catch (missing tables, unknown metric
// names). main() maps this to exit code 1, DataError to 2, the rest to 3.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct ScoreOptions {
  std::string jsonl;
  std::string hyp;
  std::vector<std::string> refs;
  std::string embeddings;
  std::string sentence_vectors;
  std::string synonyms;
  std::vector<std::string> metrics;  // empty -> defaults from given tables
  std::string bleu_smoothing = "add-one";  // sentence-level
  int max_n = 4;
  bool no_lowercase = false;
  int threads = 0;  // 0 -> NLGM_THREADS env or 1
  std::string out;
  bool pretty = false;
};

struct CorrelateOptions {
  std::string report;
  std::string ratings;
  double kappa_threshold = 0.1;
  std::string kappa_rule = "mean";
  std::string p_method = "t";
  std::uint64_t seed = 0;
  std::string out;
  std::string csv;
  bool pretty = false;
};

struct KappaOptions {
  std::string ratings;
  std::vector<double> buckets = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  std::string out;
  bool pretty = false;
};

struct BaselineOptions {
  std::string train;
  std::string test;
  std::uint64_t seed = 0;
  std::string out;
};

struct ScatterOptions {
  std::string report;
  std::string ratings;
  std::string metric;
  std::uint64_t seed = 0;
  double sigma_human = 0.1;
  double sigma_metric = 0.02;
  std::string out;
};

int run_score(const ScoreOptions& opts);
int run_correlate(const CorrelateOptions& opts);
int run_kappa(const KappaOptions& opts);
int run_baseline(const BaselineOptions& opts);
int run_scatter(const ScatterOptions& opts);

}  // namespace nlgm::cli
