#include <cstdlib>
#include <memory>
#include <optional>

#include "commands.hpp"
#include "io_util.hpp"
#include "nlgm/aggregation.hpp"
#include "nlgm/corpus.hpp"

namespace nlgm::cli {

namespace {

Metric parse_metric_name(const std::string& name) {
  if (name == "bleu") return Metric::bleu;
  if (name == "meteor") return Metric::meteor;
  if (name == "rouge" || name == "rouge-l") return Metric::rouge_l;
  if (name == "average" || name == "embedding-average") {
    return Metric::embedding_average;
  }
  if (name == "extrema" || name == "vector-extrema") {
    return Metric::vector_extrema;
  }
  if (name == "greedy" || name == "greedy-matching") {
    return Metric::greedy_matching;
  }
  if (name == "skip" || name == "skip-thought") return Metric::skip_thought;
  throw UsageError("unknown metric \"" + name +
                   "\" (expected bleu, meteor, rouge, average, extrema, "
                   "greedy or skip)");
}

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("NLGM_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  return 1;
}

}  // namespace

int run_score(const ScoreOptions& opts) {
  if (opts.jsonl.empty() == (opts.hyp.empty() && opts.refs.empty())) {
    throw UsageError("provide either --jsonl or --hyp with --refs");
  }
  if (!opts.hyp.empty() && opts.refs.empty()) {
    throw UsageError("--hyp requires at least one --refs file");
  }

  Corpus corpus;
  if (!opts.jsonl.empty()) {
    auto in = open_input(opts.jsonl);
    corpus = load_corpus_jsonl(in);
  } else {
    auto hyp = open_input(opts.hyp);
    std::vector<std::ifstream> ref_files;
    ref_files.reserve(opts.refs.size());
    for (const std::string& path : opts.refs) {
      ref_files.push_back(open_input(path));
    }
    std::vector<std::istream*> refs;
    for (std::ifstream& f : ref_files) refs.push_back(&f);
    corpus = load_corpus_parallel(hyp, refs);
  }

  std::optional<EmbeddingTable> embeddings;
  if (!opts.embeddings.empty()) {
    auto in = open_input(opts.embeddings);
    embeddings = EmbeddingTable::load(in);
  }
  std::optional<SentenceVectorTable> sentence_vectors;
  if (!opts.sentence_vectors.empty()) {
    auto in = open_input(opts.sentence_vectors);
    sentence_vectors = SentenceVectorTable::load(in);
  }
  std::optional<SynonymLexicon> lexicon;
  if (!opts.synonyms.empty()) {
    auto in = open_input(opts.synonyms);
    lexicon = SynonymLexicon::load(in);
  }

  EvalConfig cfg;
  if (opts.metrics.empty()) {
    // default: word-overlap metrics, plus whatever the given tables enable
    cfg.metrics = {Metric::bleu, Metric::meteor, Metric::rouge_l};
    if (embeddings) {
      cfg.metrics.insert(Metric::embedding_average);
      cfg.metrics.insert(Metric::vector_extrema);
      cfg.metrics.insert(Metric::greedy_matching);
    }
    if (sentence_vectors) {
      cfg.metrics.insert(Metric::skip_thought);
    }
  } else {
    cfg.metrics.clear();
    for (const std::string& name : opts.metrics) {
      cfg.metrics.insert(parse_metric_name(name));
    }
  }

  const bool wants_embeddings =
      cfg.metrics.count(Metric::embedding_average) > 0 ||
      cfg.metrics.count(Metric::vector_extrema) > 0 ||
      cfg.metrics.count(Metric::greedy_matching) > 0;
  if (wants_embeddings && !embeddings) {
    throw UsageError("the enabled embedding metrics require --embeddings");
  }
  if (cfg.metrics.count(Metric::skip_thought) > 0 && !sentence_vectors) {
    throw UsageError("skip-thought requires --sentvecs");
  }

  if (opts.bleu_smoothing == "none") {
    cfg.sentence_bleu_cfg.smoothing = BleuSmoothing::none;
  } else if (opts.bleu_smoothing == "add-one") {
    cfg.sentence_bleu_cfg.smoothing = BleuSmoothing::add_one_higher_order;
  } else {
    throw UsageError("--bleu-smoothing must be none or add-one");
  }
  if (opts.max_n < 1 || opts.max_n > 4) {
    throw UsageError("--max-n must be in [1,4]");
  }
  cfg.sentence_bleu_cfg.max_n = opts.max_n;
  cfg.corpus_bleu_cfg.max_n = opts.max_n;
  cfg.lowercase = !opts.no_lowercase;
  cfg.threads = resolve_threads(opts.threads);

  const MetricReport report =
      evaluate(corpus, cfg, embeddings ? &*embeddings : nullptr,
               sentence_vectors ? &*sentence_vectors : nullptr,
               lexicon ? &*lexicon : nullptr);
  std::string text = report_to_json(report, opts.pretty);
  text.push_back('\n');
  emit(opts.out, text);
  return 0;
}

}  // namespace nlgm::cli
