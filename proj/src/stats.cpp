#include "ebdi/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace ebdi {

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // positions i..j-1 hold ranks i+1..j
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double spearman_rho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("series lengths differ");
  }
  if (x.size() < 3) {
    throw std::invalid_argument("at least 3 paired values are required");
  }
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mean = (n + 1.0) / 2.0;  // ranks always average (n+1)/2

  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw std::invalid_argument("constant series: rank correlation undefined");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::pair<double, std::size_t> spearman_rho(const MetricSeries& x,
                                            const MetricSeries& y) {
  std::vector<double> xs, ys;
  for (const auto& [unit, value] : x.values) {
    auto it = y.values.find(unit);
    if (it == y.values.end()) continue;
    xs.push_back(value);
    ys.push_back(it->second);
  }
  if (xs.size() < 3) {
    throw std::invalid_argument("'" + x.name + "' and '" + y.name + "' overlap on " +
                                std::to_string(xs.size()) +
                                " units, at least 3 required");
  }
  try {
    return {spearman_rho(xs, ys), xs.size()};
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("'" + x.name + "' or '" + y.name +
                                "' is constant over the overlapping units");
  }
}

double p_two_tailed(double rho, std::size_t n) {
  if (n < 3) throw std::invalid_argument("p-value needs n >= 3");
  if (std::abs(rho) >= 1.0) return 0.0;
  const double dof = static_cast<double>(n - 2);
  const double t = rho * std::sqrt(dof / ((1.0 - rho) * (1.0 + rho)));
  boost::math::students_t_distribution<double> dist(dof);
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  return std::clamp(p, 0.0, 1.0);
}

CorrelationResult correlate(const MetricSeries& x, const MetricSeries& y) {
  CorrelationResult result;
  result.pair = {x.name, y.name};
  auto [rho, n] = spearman_rho(x, y);
  result.rho = rho;
  result.n = n;
  result.p_two_tailed = p_two_tailed(rho, n);
  result.method_note = "t-approximation, df=n-2";
  if (std::abs(rho) >= 1.0) result.method_note += "; |rho|=1, p set to 0";
  return result;
}

}  // namespace ebdi
