#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ebdi {

/// Values of one external or derived metric, keyed by unit id. Units without
/// a value are simply absent.
struct MetricSeries {
  std::string name;
  std::map<std::string, double, std::less<>> values;
};

struct CorrelationResult {
  std::pair<std::string, std::string> pair;
  std::size_t n = 0;
  double rho = 0.0;
  double p_two_tailed = 1.0;
  std::string method_note;
};

/// 1-based ranks; tied values share the mean of the ranks they span.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman correlation over the units present in both series, computed as
/// the Pearson correlation of average ranks. Throws std::invalid_argument
/// when fewer than 3 units overlap or either overlapping series is constant.
std::pair<double, std::size_t> spearman_rho(const MetricSeries& x,
                                            const MetricSeries& y);

/// Same, over two aligned vectors.
double spearman_rho(std::span<const double> x, std::span<const double> y);

/// Two-tailed p-value of rho under the t approximation with n - 2 degrees of
/// freedom. |rho| = 1 gives 0. Throws std::invalid_argument for n < 3.
double p_two_tailed(double rho, std::size_t n);

/// spearman_rho + p_two_tailed packaged with a method note.
CorrelationResult correlate(const MetricSeries& x, const MetricSeries& y);

}  // namespace ebdi
