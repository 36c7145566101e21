// nlgm: NLG evaluation toolkit. Subcommands:
//   score      word-overlap and embedding metrics over a corpus
//   correlate  rater filtering + metric-vs-human correlation table
//   kappa      pairwise Cohen's kappa with bucket summary
//   baseline   retrieval baseline generation from a training corpus
//   scatter    jittered scatter export for plotting

#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "nlgm/error.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NLG evaluation metrics and correlation-study toolkit"};
  app.require_subcommand(1);

  nlgm::cli::ScoreOptions score;
  CLI::App* score_cmd =
      app.add_subcommand("score", "Score a corpus with the enabled metrics");
  score_cmd->add_option("--jsonl", score.jsonl,
                        "Corpus in jsonl format (id/hypothesis/references)");
  score_cmd->add_option("--hyp", score.hyp, "Hypothesis file, one per line");
  score_cmd->add_option("--refs", score.refs,
                        "Reference files (parallel line counts)");
  score_cmd->add_option("--embeddings", score.embeddings,
                        "Word embeddings, text format");
  score_cmd->add_option("--sentvecs", score.sentence_vectors,
                        "Precomputed sentence vectors, text format");
  score_cmd->add_option("--synonyms", score.synonyms,
                        "Synonym lexicon (one group per line)");
  score_cmd->add_option("--metrics", score.metrics,
                        "Metrics: bleu meteor rouge average extrema greedy skip")
      ->delimiter(',');
  score_cmd->add_option("--bleu-smoothing", score.bleu_smoothing,
                        "Sentence BLEU smoothing: none | add-one");
  score_cmd->add_option("--max-n", score.max_n, "BLEU order N (1..4)");
  score_cmd->add_flag("--no-lowercase", score.no_lowercase,
                      "Keep the original casing");
  score_cmd->add_option("--threads", score.threads,
                        "Worker threads (or NLGM_THREADS env)");
  score_cmd->add_option("--out", score.out, "Write the report here");
  score_cmd->add_flag("--pretty", score.pretty, "Indent the JSON output");

  nlgm::cli::CorrelateOptions correlate;
  CLI::App* correlate_cmd = app.add_subcommand(
      "correlate", "Correlate metric scores with human ratings");
  correlate_cmd->add_option("--report", correlate.report, "score report JSON")
      ->required();
  correlate_cmd->add_option("--ratings", correlate.ratings,
                            "ratings CSV (item_id,rater_id,score)")
      ->required();
  correlate_cmd->add_option("--kappa-threshold", correlate.kappa_threshold,
                            "Rater filter threshold");
  correlate_cmd->add_option("--kappa-rule", correlate.kappa_rule,
                            "Filter rule: mean | max");
  correlate_cmd->add_option("--p-method", correlate.p_method,
                            "p-values: t | exact (n <= 10)");
  correlate_cmd->add_option("--seed", correlate.seed,
                            "Seed for the human-vs-human split");
  correlate_cmd->add_option("--out", correlate.out, "Write JSON here");
  correlate_cmd->add_option("--csv", correlate.csv, "Also write a CSV table");
  correlate_cmd->add_flag("--pretty", correlate.pretty, "Indent the JSON");

  nlgm::cli::KappaOptions kappa;
  CLI::App* kappa_cmd =
      app.add_subcommand("kappa", "Pairwise Cohen's kappa between raters");
  kappa_cmd->add_option("--ratings", kappa.ratings, "ratings CSV")->required();
  kappa_cmd->add_option("--buckets", kappa.buckets,
                        "Thresholds for the bucket summary")
      ->delimiter(',');
  kappa_cmd->add_option("--out", kappa.out, "Write JSON here");
  kappa_cmd->add_flag("--pretty", kappa.pretty, "Indent the JSON");

  nlgm::cli::BaselineOptions baseline;
  CLI::App* baseline_cmd = app.add_subcommand(
      "baseline", "Random retrieval baseline over dialogue acts");
  baseline_cmd->add_option("--train", baseline.train, "training corpus jsonl")
      ->required();
  baseline_cmd->add_option("--test", baseline.test, "test corpus jsonl")
      ->required();
  baseline_cmd->add_option("--seed", baseline.seed, "Sampling seed");
  baseline_cmd->add_option("--out", baseline.out, "Write generated jsonl here");

  nlgm::cli::ScatterOptions scatter;
  CLI::App* scatter_cmd = app.add_subcommand(
      "scatter", "Jittered human-vs-metric scatter data (CSV)");
  scatter_cmd->add_option("--report", scatter.report, "score report JSON")
      ->required();
  scatter_cmd->add_option("--ratings", scatter.ratings, "ratings CSV")
      ->required();
  scatter_cmd->add_option("--metric", scatter.metric,
                          "Metric key from the report (e.g. meteor, bleu-2)")
      ->required();
  scatter_cmd->add_option("--seed", scatter.seed, "Jitter seed");
  scatter_cmd->add_option("--sigma-human", scatter.sigma_human,
                          "Jitter sigma on the human axis");
  scatter_cmd->add_option("--sigma-metric", scatter.sigma_metric,
                          "Jitter sigma on the metric axis");
  scatter_cmd->add_option("--out", scatter.out, "Write CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (score_cmd->parsed()) return nlgm::cli::run_score(score);
    if (correlate_cmd->parsed()) return nlgm::cli::run_correlate(correlate);
    if (kappa_cmd->parsed()) return nlgm::cli::run_kappa(kappa);
    if (baseline_cmd->parsed()) return nlgm::cli::run_baseline(baseline);
    if (scatter_cmd->parsed()) return nlgm::cli::run_scatter(scatter);
  } catch (const nlgm::cli::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlgm::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;  // unreachable with require_subcommand(1)
}
