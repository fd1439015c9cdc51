#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "gapphaz/dataset.hpp"
#include "gapphaz/errors.hpp"

namespace gapphaz {

/// Right-continuous step function: `initial` before the first breakpoint,
/// values[i] on [breakpoints[i], breakpoints[i+1]).
class StepFunction {
 public:
  StepFunction() = default;
  StepFunction(double initial, std::vector<double> breakpoints, std::vector<double> values)
      : initial_(initial), breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.size() != values_.size()) {
      throw std::domain_error("StepFunction: breakpoints and values differ in length");
    }
    for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
      if (!(breakpoints_[i] > breakpoints_[i - 1])) {
        throw std::domain_error("StepFunction: breakpoints must be strictly increasing");
      }
    }
  }

  double operator()(double t) const {
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    if (it == breakpoints_.begin()) return initial_;
    return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
  }

  double initial() const noexcept { return initial_; }
  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return breakpoints_.size(); }

 private:
  double initial_ = 0.0;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/**
 * Product-limit estimate S(t) = prod_{t_i <= t} (1 - d_i / n_i) over distinct
 * observed times. Ties at one time form a single step. Records censored at
 * an event time are still in that time's risk set (deaths first).
 */
inline StepFunction kaplan_meier(const Dataset& data) {
  detail::require_domain(!data.empty(), "kaplan_meier: dataset is empty");
  std::vector<Record> recs = data.records;
  std::sort(recs.begin(), recs.end(), [](const Record& a, const Record& b) { return a.time < b.time; });

  std::vector<double> times;
  std::vector<double> levels;
  double s = 1.0;
  std::size_t at_risk = recs.size();
  std::size_t i = 0;
  while (i < recs.size()) {
    const double t = recs[i].time;
    std::size_t deaths = 0;
    std::size_t j = i;
    for (; j < recs.size() && recs[j].time == t; ++j) deaths += recs[j].observed ? 1 : 0;
    if (deaths > 0) {
      s *= 1.0 - static_cast<double>(deaths) / static_cast<double>(at_risk);
      times.push_back(t);
      levels.push_back(s);
    }
    at_risk -= (j - i);
    i = j;
  }
  return StepFunction(1.0, std::move(times), std::move(levels));
}

/**
 * One-sample Kolmogorov-Smirnov distance
 *   max_i max(|i/n - F(x_(i))|, |(i-1)/n - F(x_(i))|)
 * between the empirical CDF of `samples` and `cdf`.
 */
template <class Cdf>
double ks_distance(std::span<const double> samples, Cdf&& cdf) {
  detail::require_domain(!samples.empty(), "ks_distance: no samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, std::abs(above), std::abs(below)});
  }
  return d;
}

struct BinCount {
  std::size_t count = 10;
};
struct BinWidth {
  double width = 1.0;
};
using BinSpec = std::variant<BinCount, BinWidth>;

struct HistogramBin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
};

/// Equal-width bins [lower, upper) starting at 0 and covering the sample
/// maximum. With a bin count the maximum falls into the last (closed) bin.
inline std::vector<HistogramBin> histogram(std::span<const double> samples, BinSpec spec) {
  detail::require_domain(!samples.empty(), "histogram: no samples");
  double max = 0.0;
  for (double x : samples) {
    detail::require_domain(x >= 0.0 && std::isfinite(x), "histogram: samples must be finite and >= 0");
    max = std::max(max, x);
  }
  double width = 0.0;
  std::size_t bins = 0;
  if (const auto* c = std::get_if<BinCount>(&spec)) {
    detail::require_domain(c->count > 0, "histogram: bin count must be > 0");
    bins = c->count;
    width = max > 0.0 ? max / static_cast<double>(bins) : 1.0;
  } else {
    width = std::get<BinWidth>(spec).width;
    detail::require_domain(width > 0.0 && std::isfinite(width), "histogram: bin width must be > 0");
    bins = static_cast<std::size_t>(std::floor(max / width)) + 1;
  }
  std::vector<HistogramBin> out(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b].lower = width * static_cast<double>(b);
    out[b].upper = width * static_cast<double>(b + 1);
  }
  for (double x : samples) {
    auto b = static_cast<std::size_t>(std::floor(x / width));
    out[std::min(b, bins - 1)].count += 1;
  }
  return out;
}

}  // namespace gapphaz
