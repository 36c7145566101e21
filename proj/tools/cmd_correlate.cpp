#include <algorithm>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "io_util.hpp"
#include "nlgm/aggregation.hpp"
#include "nlgm/corpus.hpp"
#include "nlgm/rng.hpp"
#include "nlgm/stats.hpp"

namespace nlgm::cli {

namespace {

using json = nlohmann::json;

json correlation_json(const std::optional<CorrelationResult>& r) {
  if (!r) return nullptr;
  json j;
  j["coefficient"] = r->coefficient;
  j["p_value"] = r->p_value ? json(*r->p_value) : json(nullptr);
  j["n"] = r->n;
  return j;
}

void append_csv_row(std::string& csv, const std::string& metric,
                    std::size_t n,
                    const std::optional<CorrelationResult>& spearman,
                    const std::optional<CorrelationResult>& pearson,
                    const std::string& note) {
  char buf[64];
  auto num = [&buf](const std::optional<CorrelationResult>& r,
                    bool p) -> std::string {
    if (!r) return "";
    if (p) {
      if (!r->p_value) return "";
      std::snprintf(buf, sizeof(buf), "%.10g", *r->p_value);
    } else {
      std::snprintf(buf, sizeof(buf), "%.10g", r->coefficient);
    }
    return buf;
  };
  csv += metric + ',' + std::to_string(n) + ',' + num(spearman, false) + ',' +
         num(spearman, true) + ',' + num(pearson, false) + ',' +
         num(pearson, true) + ',' + note + '\n';
}

}  // namespace

int run_correlate(const CorrelateOptions& opts) {
  KappaRule rule;
  if (opts.kappa_rule == "mean") {
    rule = KappaRule::mean;
  } else if (opts.kappa_rule == "max") {
    rule = KappaRule::max;
  } else {
    throw UsageError("--kappa-rule must be mean or max");
  }
  PValueMethod method;
  if (opts.p_method == "t") {
    method = PValueMethod::t_approx;
  } else if (opts.p_method == "exact") {
    method = PValueMethod::exact_permutation;
  } else {
    throw UsageError("--p-method must be t or exact");
  }

  auto report_in = open_input(opts.report);
  const auto metric_scores = load_report_metric_scores(report_in);
  auto ratings_in = open_input(opts.ratings);
  const RatingMatrix ratings = load_ratings(ratings_in);

  const std::vector<std::string> retained =
      filter_raters(ratings, opts.kappa_threshold, rule);
  std::vector<std::string> removed;
  for (const std::string& rater : ratings.raters) {
    if (std::find(retained.begin(), retained.end(), rater) == retained.end()) {
      removed.push_back(rater);
    }
  }

  // Restrict the grid to retained raters; items left without any score are
  // dropped from the study and reported.
  RatingMatrix filtered;
  std::vector<std::string> dropped_items;
  for (const std::string& item : ratings.items) {
    bool any = false;
    for (const std::string& rater : retained) {
      if (auto s = ratings.score(item, rater)) {
        filtered.add(item, rater, *s);
        any = true;
      }
    }
    if (!any) dropped_items.push_back(item);
  }

  const std::map<std::string, double> human_means =
      item_means(filtered, retained);
  const std::vector<MetricCorrelationRow> rows =
      metric_human_table(metric_scores, human_means, method);

  const bool any_shared =
      std::any_of(rows.begin(), rows.end(),
                  [](const MetricCorrelationRow& r) { return r.n > 0; });
  if (rows.empty() || !any_shared) {
    throw DataError("no shared items between the report and the ratings");
  }

  std::mt19937_64 rng = make_rng(opts.seed, "rater-split");
  const HumanHumanResult human =
      filtered.raters.size() >= 2
          ? human_human_correlation(filtered, rng, method)
          : HumanHumanResult{};

  json out;
  out["kappa_threshold"] = opts.kappa_threshold;
  out["kappa_rule"] = opts.kappa_rule;
  out["p_method"] = opts.p_method;
  out["seed"] = opts.seed;
  out["retained_raters"] = retained;
  out["removed_raters"] = removed;
  out["dropped_items"] = dropped_items;
  json metrics = json::array();
  for (const MetricCorrelationRow& row : rows) {
    json r;
    r["metric"] = row.metric;
    r["n"] = row.n;
    r["spearman"] = correlation_json(row.spearman);
    r["pearson"] = correlation_json(row.pearson);
    r["note"] = row.note;
    metrics.push_back(std::move(r));
  }
  out["metrics"] = std::move(metrics);
  json human_json;
  human_json["spearman"] = correlation_json(human.spearman);
  human_json["pearson"] = correlation_json(human.pearson);
  human_json["group_a"] = human.group_a;
  human_json["group_b"] = human.group_b;
  human_json["items_used"] = human.items_used;
  out["human"] = std::move(human_json);

  std::string text = out.dump(opts.pretty ? 2 : -1);
  text.push_back('\n');
  emit(opts.out, text);

  if (!opts.csv.empty()) {
    std::string csv = "metric,n,spearman,spearman_p,pearson,pearson_p,note\n";
    for (const MetricCorrelationRow& row : rows) {
      append_csv_row(csv, row.metric, row.n, row.spearman, row.pearson,
                     row.note);
    }
    append_csv_row(csv, "human", human.items_used, human.spearman,
                   human.pearson, "human-vs-human split");
    emit(opts.csv, csv);
  }
  return 0;
}

}  // namespace nlgm::cli
