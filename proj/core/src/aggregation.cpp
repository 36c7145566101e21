#include "nlgm/aggregation.hpp"

#include <atomic>
#include <istream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "nlgm/error.hpp"

namespace nlgm {

using json = nlohmann::json;

namespace {

const char* smoothing_name(BleuSmoothing s) {
  return s == BleuSmoothing::none ? "none" : "add-one-higher-order";
}

const char* stage_name(MatcherStage s) {
  switch (s) {
    case MatcherStage::exact: return "exact";
    case MatcherStage::stem: return "stem";
    case MatcherStage::synonym: return "synonym";
  }
  return "?";
}

json bleu_config_json(const BleuConfig& cfg) {
  json j;
  j["max_n"] = cfg.max_n;
  j["smoothing"] = smoothing_name(cfg.smoothing);
  j["weights"] = cfg.effective_weights();
  return j;
}

struct TokenizedInstance {
  TokenSeq hyp;
  std::vector<TokenSeq> refs;
};

}  // namespace

std::string metric_name(Metric m) {
  switch (m) {
    case Metric::bleu: return "bleu";
    case Metric::meteor: return "meteor";
    case Metric::rouge_l: return "rouge-l";
    case Metric::embedding_average: return "embedding-average";
    case Metric::vector_extrema: return "vector-extrema";
    case Metric::greedy_matching: return "greedy-matching";
    case Metric::skip_thought: return "skip-thought";
  }
  return "?";
}

MetricReport evaluate(const Corpus& corpus, const EvalConfig& cfg,
                      const EmbeddingTable* embeddings,
                      const SentenceVectorTable* sentence_vectors,
                      const SynonymLexicon* lexicon) {
  if (corpus.empty()) {
    throw DataError("evaluate: empty corpus");
  }
  cfg.corpus_bleu_cfg.validate();
  cfg.sentence_bleu_cfg.validate();
  cfg.meteor_cfg.validate();
  cfg.rouge_cfg.validate();
  const bool needs_embeddings =
      cfg.metrics.count(Metric::embedding_average) > 0 ||
      cfg.metrics.count(Metric::vector_extrema) > 0 ||
      cfg.metrics.count(Metric::greedy_matching) > 0;
  if (needs_embeddings && embeddings == nullptr) {
    throw std::invalid_argument(
        "evaluate: embedding metrics enabled but no embedding table given");
  }
  if (cfg.metrics.count(Metric::skip_thought) > 0 &&
      sentence_vectors == nullptr) {
    throw std::invalid_argument(
        "evaluate: skip-thought enabled but no sentence-vector table given");
  }

  const SynonymLexicon empty_lexicon;
  const SynonymLexicon& lex = lexicon ? *lexicon : empty_lexicon;

  const std::size_t count = corpus.size();
  std::vector<TokenizedInstance> tokenized(count);
  for (std::size_t i = 0; i < count; ++i) {
    const EvalInstance& inst = corpus.instances[i];
    tokenized[i].hyp = tokenize(inst.hypothesis, cfg.lowercase);
    tokenized[i].refs.reserve(inst.references.size());
    for (const std::string& ref : inst.references) {
      tokenized[i].refs.push_back(tokenize(ref, cfg.lowercase));
    }
  }

  // Sentence-BLEU configs per order 1..max_n, uniform weights.
  std::vector<BleuConfig> bleu_by_order;
  for (int n = 1; n <= cfg.sentence_bleu_cfg.max_n; ++n) {
    BleuConfig c = cfg.sentence_bleu_cfg;
    c.max_n = n;
    c.weights.clear();
    bleu_by_order.push_back(c);
  }

  std::vector<std::map<std::string, InstanceScore>> rows(count);
  auto score_instance = [&](std::size_t i) {
    const EvalInstance& inst = corpus.instances[i];
    const TokenizedInstance& toks = tokenized[i];
    std::map<std::string, InstanceScore>& row = rows[i];
    for (Metric metric : cfg.metrics) {
      switch (metric) {
        case Metric::bleu:
          for (const BleuConfig& c : bleu_by_order) {
            row["bleu-" + std::to_string(c.max_n)] = {
                sentence_bleu(toks.hyp, toks.refs, c), true};
          }
          break;
        case Metric::meteor:
          row["meteor"] = {meteor(toks.hyp, toks.refs, cfg.meteor_cfg, lex),
                           true};
          break;
        case Metric::rouge_l:
          row["rouge-l"] = {rouge_l(toks.hyp, toks.refs, cfg.rouge_cfg), true};
          break;
        case Metric::embedding_average:
        case Metric::vector_extrema:
        case Metric::greedy_matching: {
          const auto kind = metric == Metric::embedding_average
                                ? EmbeddingMetricKind::average
                                : metric == Metric::vector_extrema
                                      ? EmbeddingMetricKind::extrema
                                      : EmbeddingMetricKind::greedy;
          const SimilarityScore score =
              embedding_metric_score(toks.hyp, toks.refs, *embeddings, kind);
          row[metric_name(metric)] = {score.value, score.defined};
          break;
        }
        case Metric::skip_thought: {
          std::vector<std::string> ref_ids;
          ref_ids.reserve(inst.references.size());
          for (std::size_t k = 0; k < inst.references.size(); ++k) {
            ref_ids.push_back(inst.id + "::ref" + std::to_string(k));
          }
          const SimilarityScore score =
              skip_vector_similarity(inst.id, ref_ids, *sentence_vectors);
          row["skip-thought"] = {score.value, score.defined};
          break;
        }
      }
    }
  };

  const unsigned threads =
      std::min<unsigned>(std::max(1, cfg.threads),
                         static_cast<unsigned>(count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) score_instance(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) break;
            score_instance(i);
          }
        } catch (...) {
          failures[t] = std::current_exception();
        }
      });
    }
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& failure : failures) {
      if (failure) std::rethrow_exception(failure);
    }
  }

  MetricReport report;
  report.config = cfg;
  for (std::size_t i = 0; i < count; ++i) {
    report.per_instance[corpus.instances[i].id] = std::move(rows[i]);
  }

  // corpus level: fixed-order mean of defined scores, then pooled BLEU
  std::map<std::string, double> sums;
  std::map<std::string, std::size_t> defined_counts;
  for (std::size_t i = 0; i < count; ++i) {
    for (const auto& [key, score] :
         report.per_instance[corpus.instances[i].id]) {
      if (score.defined) {
        sums[key] += score.value;
        ++defined_counts[key];
      } else {
        ++report.undefined_counts[key];
      }
    }
    if (tokenized[i].hyp.empty()) {
      report.warnings.push_back("instance \"" + corpus.instances[i].id +
                                "\": empty hypothesis scored 0");
    }
  }
  for (const auto& [key, sum] : sums) {
    report.corpus_level[key] = sum / static_cast<double>(defined_counts[key]);
  }
  if (cfg.metrics.count(Metric::bleu) > 0) {
    std::vector<TokenSeq> hyps;
    std::vector<std::vector<TokenSeq>> refs;
    hyps.reserve(count);
    refs.reserve(count);
    for (TokenizedInstance& t : tokenized) {
      hyps.push_back(std::move(t.hyp));
      refs.push_back(std::move(t.refs));
    }
    for (int n = 1; n <= cfg.corpus_bleu_cfg.max_n; ++n) {
      BleuConfig c = cfg.corpus_bleu_cfg;
      c.max_n = n;
      c.weights.clear();
      report.corpus_level["corpus-bleu-" + std::to_string(n)] =
          corpus_bleu(hyps, refs, c);
    }
  }
  return report;
}

std::string report_to_json(const MetricReport& report, bool pretty) {
  json j;
  j["schema_version"] = report.schema_version;

  json config;
  json metrics = json::array();
  for (Metric m : report.config.metrics) {
    metrics.push_back(metric_name(m));
  }
  config["metrics"] = std::move(metrics);
  config["lowercase"] = report.config.lowercase;
  config["threads"] = report.config.threads;
  config["corpus_bleu"] = bleu_config_json(report.config.corpus_bleu_cfg);
  config["sentence_bleu"] = bleu_config_json(report.config.sentence_bleu_cfg);
  json meteor_cfg;
  meteor_cfg["recall_weight"] = report.config.meteor_cfg.recall_weight;
  meteor_cfg["penalty_gamma"] = report.config.meteor_cfg.penalty_gamma;
  meteor_cfg["penalty_theta"] = report.config.meteor_cfg.penalty_theta;
  json stages = json::array();
  for (MatcherStage s : report.config.meteor_cfg.stages) {
    stages.push_back(stage_name(s));
  }
  meteor_cfg["stages"] = std::move(stages);
  config["meteor"] = std::move(meteor_cfg);
  config["rouge"] = json{{"beta", report.config.rouge_cfg.beta}};
  j["config"] = std::move(config);

  json per_instance;
  for (const auto& [id, row] : report.per_instance) {
    json scores;
    for (const auto& [key, score] : row) {
      scores[key] = json{{"value", score.value}, {"defined", score.defined}};
    }
    per_instance[id] = std::move(scores);
  }
  j["per_instance"] = std::move(per_instance);
  j["corpus_level"] = report.corpus_level;
  j["undefined_counts"] = report.undefined_counts;
  j["warnings"] = report.warnings;
  return pretty ? j.dump(2) : j.dump();
}

std::map<std::string, std::map<std::string, double>> load_report_metric_scores(
    std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("malformed report JSON: ") + e.what());
  }
  if (!j.contains("per_instance") || !j["per_instance"].is_object()) {
    throw DataError("report JSON lacks a \"per_instance\" object");
  }
  std::map<std::string, std::map<std::string, double>> scores;
  for (const auto& [id, row] : j["per_instance"].items()) {
    for (const auto& [key, score] : row.items()) {
      if (!score.contains("value") || !score.contains("defined")) {
        throw DataError("report JSON score entries need value/defined fields");
      }
      if (score["defined"].get<bool>()) {
        scores[key][id] = score["value"].get<double>();
      }
    }
  }
  return scores;
}

}  // namespace nlgm
