#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "nlgm/corpus.hpp"

namespace nlgm {

struct CorrelationResult {
  double coefficient = 0.0;
  std::optional<double> p_value;  // requires n >= 3
  std::size_t n = 0;
};

enum class PValueMethod {
  t_approx,            // two-sided p from t = r*sqrt((n-2)/(1-r^2))
  exact_permutation,   // full enumeration, only for n <= 10
};

// Sample Pearson correlation. nullopt when either input is constant.
// Throws std::invalid_argument on length mismatch or n < 2.
std::optional<CorrelationResult> pearson(
    std::span<const double> x, std::span<const double> y,
    PValueMethod method = PValueMethod::t_approx);

// Pearson of average ranks; ties receive the mean of their rank range.
std::optional<CorrelationResult> spearman(
    std::span<const double> x, std::span<const double> y,
    PValueMethod method = PValueMethod::t_approx);

// 1-based average (fractional) ranks.
std::vector<double> average_ranks(std::span<const double> values);

// Cohen's kappa (p_o - p_e) / (1 - p_e) over categorical labels; 1.0 when
// p_e == 1 (both raters constant and equal). Throws std::invalid_argument
// on length mismatch or empty input.
double cohen_kappa(std::span<const int> a, std::span<const int> b);

// Pairwise kappas over jointly rated items; nullopt marks pairs with fewer
// than 2 joint items. Keys are (rater_a, rater_b) with rater_a < rater_b.
struct KappaMatrix {
  std::vector<std::string> raters;
  std::map<std::pair<std::string, std::string>, std::optional<double>> kappas;

  std::optional<double> get(const std::string& a, const std::string& b) const;
};

KappaMatrix pairwise_kappa(const RatingMatrix& ratings);

enum class KappaRule { mean, max };

// Single pass: retain raters whose mean (or max) defined pairwise kappa
// meets the threshold. Raters with no defined pair are removed. Throws
// DataError when nobody survives.
std::vector<std::string> filter_raters(const RatingMatrix& ratings,
                                       double threshold,
                                       KappaRule rule = KappaRule::mean);

// Mean of available scores per item over the given rater subset. Throws
// DataError if an item has no score in the subset (callers that filtered
// raters should drop such items first).
std::map<std::string, double> item_means(const RatingMatrix& ratings,
                                         const std::vector<std::string>& raters);

struct HumanHumanResult {
  std::optional<CorrelationResult> spearman;
  std::optional<CorrelationResult> pearson;
  std::vector<std::string> group_a;  // larger half on odd rater counts
  std::vector<std::string> group_b;
  std::size_t items_used = 0;
};

// Raters shuffled with rng and split in half; per-item means of the two
// groups are correlated. Items lacking a score in either group are skipped.
HumanHumanResult human_human_correlation(
    const RatingMatrix& ratings, std::mt19937_64& rng,
    PValueMethod method = PValueMethod::t_approx);

struct MetricCorrelationRow {
  std::string metric;
  std::size_t n = 0;  // shared items used
  std::optional<CorrelationResult> spearman;
  std::optional<CorrelationResult> pearson;
  std::string note;  // reason when undefined
};

// Per-metric Spearman/Pearson of metric scores against human item means,
// joined on shared items. Rows with < 3 shared items or a constant input
// are marked undefined with a note instead of failing the whole table.
std::vector<MetricCorrelationRow> metric_human_table(
    const std::map<std::string, std::map<std::string, double>>& metric_scores,
    const std::map<std::string, double>& human_means,
    PValueMethod method = PValueMethod::t_approx);

struct ScatterPoint {
  std::string item_id;
  double human = 0.0;
  double metric = 0.0;
  double human_jit = 0.0;
  double metric_jit = 0.0;
};

// Gaussian jitter for plot-ready exports: sigma_human on the human axis,
// sigma_metric on the metric axis.
std::vector<ScatterPoint> scatter_export(
    const std::vector<std::tuple<std::string, double, double>>& points,
    std::mt19937_64& rng, double sigma_human = 0.1, double sigma_metric = 0.02);

// CSV columns: item_id, human, metric, human_jit, metric_jit.
void write_scatter_csv(std::ostream& out,
                       const std::vector<ScatterPoint>& points);

}  // namespace nlgm
