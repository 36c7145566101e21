#include <cstdio>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "io_util.hpp"
#include "nlgm/corpus.hpp"
#include "nlgm/stats.hpp"

namespace nlgm::cli {

using json = nlohmann::json;

int run_kappa(const KappaOptions& opts) {
  auto in = open_input(opts.ratings);
  const RatingMatrix ratings = load_ratings(in);
  if (ratings.raters.size() < 2) {
    throw DataError("kappa needs at least 2 raters");
  }
  const KappaMatrix matrix = pairwise_kappa(ratings);
  const std::size_t total = matrix.kappas.size();

  json out;
  out["raters"] = ratings.raters;
  out["n_pairs"] = total;
  json pairs = json::array();
  for (const auto& [key, kappa] : matrix.kappas) {
    json p;
    p["rater_a"] = key.first;
    p["rater_b"] = key.second;
    p["kappa"] = kappa ? json(*kappa) : json(nullptr);
    pairs.push_back(std::move(p));
  }
  out["pairs"] = std::move(pairs);

  // bucket summary: share of pairs strictly above each threshold
  json buckets = json::array();
  for (double threshold : opts.buckets) {
    std::size_t count = 0;
    for (const auto& [key, kappa] : matrix.kappas) {
      if (kappa && *kappa > threshold) ++count;
    }
    json b;
    b["threshold"] = threshold;
    b["count"] = count;
    b["total"] = total;
    b["percent"] = total == 0
                       ? 0.0
                       : 100.0 * static_cast<double>(count) /
                             static_cast<double>(total);
    buckets.push_back(std::move(b));
  }
  out["buckets"] = std::move(buckets);

  std::string text = out.dump(opts.pretty ? 2 : -1);
  text.push_back('\n');
  emit(opts.out, text);
  return 0;
}

}  // namespace nlgm::cli
