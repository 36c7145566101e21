#include <sstream>

#include "commands.hpp"
#include "io_util.hpp"
#include "nlgm/aggregation.hpp"
#include "nlgm/corpus.hpp"
#include "nlgm/rng.hpp"
#include "nlgm/stats.hpp"

namespace nlgm::cli {

int run_scatter(const ScatterOptions& opts) {
  auto report_in = open_input(opts.report);
  const auto metric_scores = load_report_metric_scores(report_in);
  const auto it = metric_scores.find(opts.metric);
  if (it == metric_scores.end()) {
    std::string available;
    for (const auto& [name, scores] : metric_scores) {
      if (!available.empty()) available += ", ";
      available += name;
    }
    throw UsageError("unknown metric \"" + opts.metric +
                     "\" (report contains: " + available + ")");
  }

  auto ratings_in = open_input(opts.ratings);
  const RatingMatrix ratings = load_ratings(ratings_in);
  const std::map<std::string, double> human =
      item_means(ratings, ratings.raters);

  std::vector<std::tuple<std::string, double, double>> points;
  for (const auto& [item, mean] : human) {
    const auto score = it->second.find(item);
    if (score != it->second.end()) {
      points.emplace_back(item, mean, score->second);
    }
  }

  std::mt19937_64 rng = make_rng(opts.seed, "jitter");
  const std::vector<ScatterPoint> jittered =
      scatter_export(points, rng, opts.sigma_human, opts.sigma_metric);
  std::ostringstream csv;
  write_scatter_csv(csv, jittered);
  emit(opts.out, csv.str());
  return 0;
}

}  // namespace nlgm::cli
