#include "nlgm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

#include "nlgm/error.hpp"
#include "nlgm/rng.hpp"

namespace nlgm {

namespace {

struct Moments {
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
};

Moments centered_moments(std::span<const double> x, std::span<const double> y) {
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) /
                    static_cast<double>(x.size());
  const double my = std::accumulate(y.begin(), y.end(), 0.0) /
                    static_cast<double>(y.size());
  Moments m;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    m.sxx += dx * dx;
    m.syy += dy * dy;
    m.sxy += dx * dy;
  }
  return m;
}

double t_approx_p_value(double r, std::size_t n) {
  // two-sided p from t = r * sqrt((n-2) / (1 - r^2)), dof = n - 2;
  // same approximation scipy.stats uses for spearmanr
  const double dof = static_cast<double>(n - 2);
  const double denom = 1.0 - r * r;
  if (denom <= 0.0) return 0.0;
  const double t = std::fabs(r) * std::sqrt(dof / denom);
  boost::math::students_t_distribution<double> dist(dof);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, t));
}

// Full-enumeration two-sided permutation test on the correlation numerator.
// Variances are permutation-invariant, so only sum(dx * dy_perm) moves.
double permutation_p_value(std::span<const double> x, std::span<const double> y,
                           double r_obs) {
  const std::size_t n = x.size();
  if (n > 10) {
    throw std::invalid_argument(
        "exact permutation p-value supported only for n <= 10");
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) /
                    static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) /
                    static_cast<double>(n);
  std::vector<double> dx(n), dy(n);
  double sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    dx[i] = x[i] - mx;
    dy[i] = y[i] - my;
    sxx += dx[i] * dx[i];
    syy += dy[i] * dy[i];
  }
  const double scale = std::sqrt(sxx * syy);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t hits = 0;
  std::size_t total = 0;
  const double threshold = std::fabs(r_obs) - 1e-12;
  do {
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sxy += dx[i] * dy[perm[i]];
    }
    if (std::fabs(sxy / scale) >= threshold) ++hits;
    ++total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(hits) / static_cast<double>(total);
}

std::optional<CorrelationResult> correlation(std::span<const double> x,
                                             std::span<const double> y,
                                             PValueMethod method) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("correlation: length mismatch");
  }
  if (x.size() < 2) {
    throw std::invalid_argument("correlation: need at least 2 observations");
  }
  const Moments m = centered_moments(x, y);
  if (m.sxx == 0.0 || m.syy == 0.0) {
    return std::nullopt;  // constant input, coefficient undefined
  }
  CorrelationResult result;
  result.n = x.size();
  result.coefficient = std::clamp(m.sxy / std::sqrt(m.sxx * m.syy), -1.0, 1.0);
  if (result.n >= 3) {
    result.p_value = method == PValueMethod::t_approx
                         ? t_approx_p_value(result.coefficient, result.n)
                         : permutation_p_value(x, y, result.coefficient);
  }
  return result;
}

}  // namespace

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // ties share the mean of ranks i+1 .. j+1
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) {
      ranks[order[k]] = rank;
    }
    i = j + 1;
  }
  return ranks;
}

std::optional<CorrelationResult> pearson(std::span<const double> x,
                                         std::span<const double> y,
                                         PValueMethod method) {
  return correlation(x, y, method);
}

std::optional<CorrelationResult> spearman(std::span<const double> x,
                                          std::span<const double> y,
                                          PValueMethod method) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("correlation: length mismatch");
  }
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  return correlation(rx, ry, method);
}

double cohen_kappa(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("cohen_kappa: length mismatch");
  }
  if (a.empty()) {
    throw std::invalid_argument("cohen_kappa: empty input");
  }
  const double n = static_cast<double>(a.size());
  std::map<int, int> count_a;
  std::map<int, int> count_b;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++count_a[a[i]];
    ++count_b[b[i]];
    if (a[i] == b[i]) ++agree;
  }
  const double p_o = static_cast<double>(agree) / n;
  double p_e = 0.0;
  for (const auto& [category, ca] : count_a) {
    auto it = count_b.find(category);
    if (it != count_b.end()) {
      p_e += (ca / n) * (it->second / n);
    }
  }
  if (1.0 - p_e == 0.0) {
    return 1.0;  // both raters constant on the same category
  }
  return (p_o - p_e) / (1.0 - p_e);
}

std::optional<double> KappaMatrix::get(const std::string& a,
                                       const std::string& b) const {
  auto it = kappas.find({a, b});
  if (it == kappas.end()) it = kappas.find({b, a});
  if (it == kappas.end()) return std::nullopt;
  return it->second;
}

KappaMatrix pairwise_kappa(const RatingMatrix& ratings) {
  if (ratings.raters.size() < 2) {
    throw std::invalid_argument("pairwise_kappa: need at least 2 raters");
  }
  KappaMatrix matrix;
  matrix.raters = ratings.raters;
  for (std::size_t i = 0; i < ratings.raters.size(); ++i) {
    for (std::size_t j = i + 1; j < ratings.raters.size(); ++j) {
      const std::string& ra = ratings.raters[i];
      const std::string& rb = ratings.raters[j];
      std::vector<int> a, b;
      for (const std::string& item : ratings.items) {
        const auto sa = ratings.score(item, ra);
        const auto sb = ratings.score(item, rb);
        if (sa && sb) {
          a.push_back(*sa);
          b.push_back(*sb);
        }
      }
      if (a.size() < 2) {
        matrix.kappas[{ra, rb}] = std::nullopt;
      } else {
        matrix.kappas[{ra, rb}] = cohen_kappa(a, b);
      }
    }
  }
  return matrix;
}

std::vector<std::string> filter_raters(const RatingMatrix& ratings,
                                       double threshold, KappaRule rule) {
  const KappaMatrix matrix = pairwise_kappa(ratings);
  std::vector<std::string> retained;
  for (const std::string& rater : ratings.raters) {
    std::vector<double> with_others;
    for (const std::string& other : ratings.raters) {
      if (other == rater) continue;
      if (auto k = matrix.get(rater, other)) {
        with_others.push_back(*k);
      }
    }
    if (with_others.empty()) continue;  // no comparable pair, drop
    double statistic;
    if (rule == KappaRule::mean) {
      statistic = std::accumulate(with_others.begin(), with_others.end(), 0.0) /
                  static_cast<double>(with_others.size());
    } else {
      statistic = *std::max_element(with_others.begin(), with_others.end());
    }
    if (statistic >= threshold) {
      retained.push_back(rater);
    }
  }
  if (retained.empty()) {
    throw DataError("all raters removed by the kappa filter");
  }
  return retained;
}

std::map<std::string, double> item_means(
    const RatingMatrix& ratings, const std::vector<std::string>& raters) {
  if (raters.empty()) {
    throw std::invalid_argument("item_means: empty rater subset");
  }
  std::map<std::string, double> means;
  for (const std::string& item : ratings.items) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const std::string& rater : raters) {
      if (auto s = ratings.score(item, rater)) {
        sum += *s;
        ++count;
      }
    }
    if (count == 0) {
      throw DataError("item \"" + item +
                      "\" has no score among the selected raters");
    }
    means[item] = sum / static_cast<double>(count);
  }
  return means;
}

HumanHumanResult human_human_correlation(const RatingMatrix& ratings,
                                         std::mt19937_64& rng,
                                         PValueMethod method) {
  if (ratings.raters.size() < 2) {
    throw DataError("human-human correlation needs at least 2 raters");
  }
  HumanHumanResult result;
  std::vector<std::string> shuffled = ratings.raters;
  nlgm::shuffle(shuffled, rng);
  const std::size_t half = (shuffled.size() + 1) / 2;  // odd -> larger first
  result.group_a.assign(shuffled.begin(),
                        shuffled.begin() + static_cast<std::ptrdiff_t>(half));
  result.group_b.assign(shuffled.begin() + static_cast<std::ptrdiff_t>(half),
                        shuffled.end());

  std::vector<double> xs, ys;
  for (const std::string& item : ratings.items) {
    double sum_a = 0.0, sum_b = 0.0;
    std::size_t n_a = 0, n_b = 0;
    for (const std::string& rater : result.group_a) {
      if (auto s = ratings.score(item, rater)) {
        sum_a += *s;
        ++n_a;
      }
    }
    for (const std::string& rater : result.group_b) {
      if (auto s = ratings.score(item, rater)) {
        sum_b += *s;
        ++n_b;
      }
    }
    if (n_a == 0 || n_b == 0) continue;
    xs.push_back(sum_a / static_cast<double>(n_a));
    ys.push_back(sum_b / static_cast<double>(n_b));
  }
  result.items_used = xs.size();
  if (xs.size() >= 2) {
    result.spearman = spearman(xs, ys, method);
    result.pearson = pearson(xs, ys, method);
  }
  return result;
}

std::vector<MetricCorrelationRow> metric_human_table(
    const std::map<std::string, std::map<std::string, double>>& metric_scores,
    const std::map<std::string, double>& human_means, PValueMethod method) {
  std::vector<MetricCorrelationRow> rows;
  for (const auto& [metric, scores] : metric_scores) {
    MetricCorrelationRow row;
    row.metric = metric;
    std::vector<double> xs, ys;
    for (const auto& [item, human] : human_means) {
      auto it = scores.find(item);
      if (it == scores.end()) continue;
      xs.push_back(human);
      ys.push_back(it->second);
    }
    row.n = xs.size();
    if (row.n < 3) {
      row.note = "fewer than 3 shared items";
    } else {
      row.spearman = spearman(xs, ys, method);
      row.pearson = pearson(xs, ys, method);
      if (!row.spearman || !row.pearson) {
        row.note = "constant input";
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ScatterPoint> scatter_export(
    const std::vector<std::tuple<std::string, double, double>>& points,
    std::mt19937_64& rng, double sigma_human, double sigma_metric) {
  std::vector<ScatterPoint> out;
  out.reserve(points.size());
  for (const auto& [id, human, metric] : points) {
    ScatterPoint p;
    p.item_id = id;
    p.human = human;
    p.metric = metric;
    p.human_jit = human + sigma_human * gaussian(rng);
    p.metric_jit = metric + sigma_metric * gaussian(rng);
    out.push_back(std::move(p));
  }
  return out;
}

void write_scatter_csv(std::ostream& out,
                       const std::vector<ScatterPoint>& points) {
  out << "item_id,human,metric,human_jit,metric_jit\n";
  char buf[128];
  for (const ScatterPoint& p : points) {
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g,%.10g", p.human,
                  p.metric, p.human_jit, p.metric_jit);
    out << p.item_id << ',' << buf << '\n';
  }
}

}  // namespace nlgm
