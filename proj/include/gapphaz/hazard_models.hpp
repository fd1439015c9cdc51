#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "gapphaz/dataset.hpp"
#include "gapphaz/errors.hpp"
#include "gapphaz/gamma_process.hpp"
#include "gapphaz/hyper_params.hpp"
#include "gapphaz/rng.hpp"

namespace gapphaz {

/// A simulated failure time; +infinity marks "never fails" for defective
/// distributions (those with a finite total cumulative hazard).
struct SampleOutcome {
  double time = 0.0;

  static constexpr SampleOutcome infinite() noexcept {
    return SampleOutcome{std::numeric_limits<double>::infinity()};
  }
  bool is_infinite() const noexcept { return std::isinf(time); }
  bool is_finite() const noexcept { return !is_infinite(); }

  friend bool operator==(const SampleOutcome&, const SampleOutcome&) = default;
};

namespace detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// |slope| below this is treated as exactly zero in the exponential segments.
inline constexpr double kFlatSlope = 1e-12;

/// Index of the last element <= x in an ascending range whose front is <= x.
inline std::size_t last_at_or_below(std::span<const double> sorted, double x) {
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
  return it == sorted.begin() ? 0 : static_cast<std::size_t>(it - sorted.begin()) - 1;
}

/// Returns true (and sets `out`) for the trivial targets every model shares.
inline bool trivial_target(double target, SampleOutcome& out) {
  if (!(target >= 0.0)) throw std::domain_error("invert_cum_hazard: target must be >= 0");
  if (target == 0.0) {
    out = SampleOutcome{0.0};
    return true;
  }
  if (std::isinf(target)) {
    out = SampleOutcome::infinite();
    return true;
  }
  return false;
}

inline std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline std::vector<double> positive_locations(const GammaProcessDraw& g) {
  std::vector<double> out;
  for (double th : g.thetas()) {
    if (th > 0.0) out.push_back(th);
  }
  return sorted_unique(std::move(out));
}

/**
 * Piecewise-linear cumulative hazard tabulated at its kinks.
 *
 * Knots start at 0 and are strictly increasing. Between knots the inverse
 * is linear interpolation; beyond the last knot the final slope continues
 * to infinity. A zero final slope makes the distribution defective.
 */
class LinearCumHazardTable {
 public:
  LinearCumHazardTable() = default;

  template <class CumHazard>
  LinearCumHazardTable(std::vector<double> knots, CumHazard&& cum, double final_slope)
      : knots_(std::move(knots)), values_(), final_slope_(final_slope) {
    values_.reserve(knots_.size());
    for (double x : knots_) values_.push_back(cum(x));
    // Guard against rounding producing a locally decreasing table.
    for (std::size_t i = 1; i < values_.size(); ++i) values_[i] = std::max(values_[i], values_[i - 1]);
  }

  std::span<const double> knots() const noexcept { return knots_; }
  std::span<const double> values() const noexcept { return values_; }

  double limit() const noexcept { return final_slope_ > 0.0 ? kInf : values_.back(); }

  SampleOutcome invert(double target) const {
    const std::size_t k = last_at_or_below(values_, target);
    const double x0 = knots_[k];
    const double v0 = values_[k];
    if (k + 1 == knots_.size()) {
      if (final_slope_ > 0.0) return SampleOutcome{x0 + (target - v0) / final_slope_};
      return target == v0 ? SampleOutcome{x0} : SampleOutcome::infinite();
    }
    const double x1 = knots_[k + 1];
    const double v1 = values_[k + 1];
    const double t = x0 + (x1 - x0) / (v1 - v0) * (target - v0);
    return SampleOutcome{std::clamp(t, x0, x1)};
  }

 private:
  std::vector<double> knots_{0.0};
  std::vector<double> values_{0.0};
  double final_slope_ = 0.0;
};

inline void require_rate(double lambda0, const char* model) {
  if (!(lambda0 >= 0.0) || !std::isfinite(lambda0)) {
    throw std::domain_error(std::string(model) + ": baseline rate lambda0 must be finite and >= 0");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Model 1: increasing failure rate, lambda(t) = lambda0 + sum_k w_k I(theta_k <= t).
// ---------------------------------------------------------------------------
class IfrModel {
 public:
  IfrModel(double lambda0, GammaProcessDraw measure)
      : lambda0_(lambda0), g_(std::move(measure)), atoms_(g_) {
    detail::require_rate(lambda0_, "IFR");
    knot_cum_.resize(atoms_.size() + 1);
    for (std::size_t l = 0; l <= atoms_.size(); ++l) {
      // Lambda(theta*_l) = lambda0 theta*_l + C*_l theta*_l - D*_l
      const double th = atoms_.theta(l);
      knot_cum_[l] = std::max(lambda0_ * th + atoms_.cum_weight(l) * th - atoms_.cum_moment(l), 0.0);
      if (l > 0) knot_cum_[l] = std::max(knot_cum_[l], knot_cum_[l - 1]);
    }
  }

  double baseline() const noexcept { return lambda0_; }
  const GammaProcessDraw& measure() const noexcept { return g_; }
  const OrderedAtoms& ordered() const noexcept { return atoms_; }

  double hazard(double t) const {
    detail::require_time(t, "IFR hazard");
    double h = lambda0_;
    for (std::size_t k = 0; k < g_.size(); ++k) {
      if (g_.thetas()[k] <= t) h += g_.weights()[k];
    }
    return h;
  }

  double cum_hazard(double t) const {
    detail::require_time(t, "IFR cum_hazard");
    return lambda0_ * t + double_integral_below(g_, t);
  }

  double cum_hazard_limit() const noexcept {
    return (lambda0_ > 0.0 || g_.gamma() > 0.0) ? detail::kInf : 0.0;
  }

  /// T = (target + D*_k) / (lambda0 + C*_k) with k the last knot whose
  /// cumulative hazard does not exceed the target.
  SampleOutcome invert_cum_hazard(double target) const {
    SampleOutcome out;
    if (detail::trivial_target(target, out)) return out;
    const std::size_t k = detail::last_at_or_below(knot_cum_, target);
    const double slope = lambda0_ + atoms_.cum_weight(k);
    if (!(slope > 0.0)) return SampleOutcome::infinite();
    const double t = (target + atoms_.cum_moment(k)) / slope;
    const double hi = k < atoms_.size() ? atoms_.theta(k + 1) : detail::kInf;
    return SampleOutcome{std::clamp(t, atoms_.theta(k), hi)};
  }

  std::vector<double> breakpoints() const { return detail::positive_locations(g_); }

 private:
  double lambda0_;
  GammaProcessDraw g_;
  OrderedAtoms atoms_;
  std::vector<double> knot_cum_;
};

// ---------------------------------------------------------------------------
// Model 2: decreasing failure rate, lambda(t) = lambda0 + sum_k w_k I(theta_k > t).
// ---------------------------------------------------------------------------
class DfrModel {
 public:
  DfrModel(double lambda0, GammaProcessDraw measure)
      : lambda0_(lambda0), g_(std::move(measure)), atoms_(g_) {
    detail::require_rate(lambda0_, "DFR");
    knot_cum_.resize(atoms_.size() + 1);
    for (std::size_t l = 0; l <= atoms_.size(); ++l) {
      // Lambda(theta*_l) = lambda0 theta*_l + D*_l + theta*_l * (mass above l)
      const double th = atoms_.theta(l);
      knot_cum_[l] = lambda0_ * th + atoms_.cum_moment(l) + th * atoms_.tail_weight(l);
      if (l > 0) knot_cum_[l] = std::max(knot_cum_[l], knot_cum_[l - 1]);
    }
  }

  double baseline() const noexcept { return lambda0_; }
  const GammaProcessDraw& measure() const noexcept { return g_; }
  const OrderedAtoms& ordered() const noexcept { return atoms_; }

  double hazard(double t) const {
    detail::require_time(t, "DFR hazard");
    return lambda0_ + integral_above(g_, t);
  }

  double cum_hazard(double t) const {
    detail::require_time(t, "DFR cum_hazard");
    return lambda0_ * t + double_integral_above(g_, t);
  }

  /// Finite (= sum_k w_k theta_k) exactly when lambda0 == 0.
  double cum_hazard_limit() const noexcept {
    return lambda0_ > 0.0 ? detail::kInf : knot_cum_.back();
  }

  /// T = (target - D*_k) / (lambda0 + gamma - C*_k).
  SampleOutcome invert_cum_hazard(double target) const {
    SampleOutcome out;
    if (detail::trivial_target(target, out)) return out;
    const std::size_t k = detail::last_at_or_below(knot_cum_, target);
    const double slope = lambda0_ + atoms_.tail_weight(k);
    if (!(slope > 0.0)) {
      // Flat beyond the last atom: only the plateau value itself is reached.
      return target == knot_cum_[k] ? SampleOutcome{atoms_.theta(k)} : SampleOutcome::infinite();
    }
    const double t = (target - atoms_.cum_moment(k)) / slope;
    const double hi = k < atoms_.size() ? atoms_.theta(k + 1) : detail::kInf;
    return SampleOutcome{std::clamp(t, atoms_.theta(k), hi)};
  }

  std::vector<double> breakpoints() const { return detail::positive_locations(g_); }

 private:
  double lambda0_;
  GammaProcessDraw g_;
  OrderedAtoms atoms_;
  std::vector<double> knot_cum_;
};

// ---------------------------------------------------------------------------
// Model 3: Lo-Weng bathtub, lambda(t) = lambda0 + int_0^{|t-a|} G(du).
// Decreasing on [0,a], minimum lambda0 at a, increasing after, and
// symmetric about a.
// ---------------------------------------------------------------------------
class LwbModel {
 public:
  LwbModel(double lambda0, double symmetry_point, GammaProcessDraw measure)
      : lambda0_(lambda0), a_(symmetry_point), g_(std::move(measure)) {
    detail::require_rate(lambda0_, "LWB");
    detail::require_domain(a_ >= 0.0 && std::isfinite(a_), "LWB: symmetry point a must be finite and >= 0");
    // Kinks of Lambda: 0, a, a - theta (theta < a) and a + theta.
    std::vector<double> knots{0.0, a_};
    for (double th : g_.thetas()) {
      if (th < a_) knots.push_back(a_ - th);
      knots.push_back(a_ + th);
    }
    table_ = detail::LinearCumHazardTable(detail::sorted_unique(std::move(knots)),
                                          [this](double x) { return cum_hazard(x); },
                                          lambda0_ + g_.gamma());
  }

  double baseline() const noexcept { return lambda0_; }
  double symmetry_point() const noexcept { return a_; }
  const GammaProcessDraw& measure() const noexcept { return g_; }

  double hazard(double t) const {
    detail::require_time(t, "LWB hazard");
    double h = lambda0_;
    const auto th = g_.thetas();
    const auto w = g_.weights();
    if (t < a_) {
      for (std::size_t k = 0; k < g_.size(); ++k) {
        if (t < a_ - th[k]) h += w[k];
      }
    } else {
      for (std::size_t k = 0; k < g_.size(); ++k) {
        if (t >= a_ + th[k]) h += w[k];
      }
    }
    return h;
  }

  double cum_hazard(double t) const {
    detail::require_time(t, "LWB cum_hazard");
    double s = 0.0;
    const auto th = g_.thetas();
    const auto w = g_.weights();
    if (t < a_) {
      for (std::size_t k = 0; k < g_.size(); ++k) {
        if (th[k] < a_) s += w[k] * std::min(t, a_ - th[k]);
      }
    } else {
      for (std::size_t k = 0; k < g_.size(); ++k) {
        s += w[k] * (std::max(0.0, a_ - th[k]) + std::max(t - a_ - th[k], 0.0));
      }
    }
    return lambda0_ * t + s;
  }

  double cum_hazard_limit() const noexcept { return table_.limit(); }

  SampleOutcome invert_cum_hazard(double target) const {
    SampleOutcome out;
    if (detail::trivial_target(target, out)) return out;
    return table_.invert(target);
  }

  std::vector<double> breakpoints() const {
    const auto k = table_.knots();
    return {k.begin() + 1, k.end()};
  }

 private:
  double lambda0_;
  double a_;
  GammaProcessDraw g_;
  detail::LinearCumHazardTable table_;
};

// ---------------------------------------------------------------------------
// Model 4: superposition bathtub,
//   lambda(t) = lambda0 + int_t^inf G1(du) + int_0^t G2(du).
// ---------------------------------------------------------------------------
class SbtModel {
 public:
  SbtModel(double lambda0, GammaProcessDraw early, GammaProcessDraw late)
      : lambda0_(lambda0), g1_(std::move(early)), g2_(std::move(late)) {
    detail::require_rate(lambda0_, "SBT");
    std::vector<double> knots{0.0};
    knots.insert(knots.end(), g1_.thetas().begin(), g1_.thetas().end());
    knots.insert(knots.end(), g2_.thetas().begin(), g2_.thetas().end());
    table_ = detail::LinearCumHazardTable(detail::sorted_unique(std::move(knots)),
                                          [this](double x) { return cum_hazard(x); },
                                          lambda0_ + g2_.gamma());
  }

  double baseline() const noexcept { return lambda0_; }
  const GammaProcessDraw& early_measure() const noexcept { return g1_; }
  const GammaProcessDraw& late_measure() const noexcept { return g2_; }

  double hazard(double t) const {
    detail::require_time(t, "SBT hazard");
    double h = lambda0_;
    for (std::size_t k = 0; k < g1_.size(); ++k) {
      if (g1_.thetas()[k] > t) h += g1_.weights()[k];
    }
    for (std::size_t k = 0; k < g2_.size(); ++k) {
      if (g2_.thetas()[k] <= t) h += g2_.weights()[k];
    }
    return h;
  }

  double cum_hazard(double t) const {
    detail::require_time(t, "SBT cum_hazard");
    return lambda0_ * t + double_integral_above(g1_, t) + double_integral_below(g2_, t);
  }

  double cum_hazard_limit() const noexcept { return table_.limit(); }

  SampleOutcome invert_cum_hazard(double target) const {
    SampleOutcome out;
    if (detail::trivial_target(target, out)) return out;
    return table_.invert(target);
  }

  std::vector<double> breakpoints() const {
    const auto k = table_.knots();
    return {k.begin() + 1, k.end()};
  }

 private:
  double lambda0_;
  GammaProcessDraw g1_;
  GammaProcessDraw g2_;
  detail::LinearCumHazardTable table_;
};

// ---------------------------------------------------------------------------
// Model 5: mixture bathtub,
//   S(t) = pi S_DFR(t | lambda01, G1) + (1 - pi) S_IFR(t | lambda02, G2).
// ---------------------------------------------------------------------------
class MbtModel {
 public:
  MbtModel(double pi, DfrModel early, IfrModel late)
      : pi_(pi), early_(std::move(early)), late_(std::move(late)) {
    detail::require_domain(pi_ > 0.0 && pi_ <= 1.0, "MBT: mixture weight pi must lie in (0,1]");
    log_pi_ = std::log(pi_);
    log_rest_ = pi_ < 1.0 ? std::log1p(-pi_) : -detail::kInf;
  }

  MbtModel(double pi, double lambda01, GammaProcessDraw g1, double lambda02, GammaProcessDraw g2)
      : MbtModel(pi, DfrModel(lambda01, std::move(g1)), IfrModel(lambda02, std::move(g2))) {}

  double mixture_weight() const noexcept { return pi_; }
  const DfrModel& early() const noexcept { return early_; }
  const IfrModel& late() const noexcept { return late_; }

  double survival(double t) const {
    detail::require_time(t, "MBT survival");
    return pi_ * std::exp(-early_.cum_hazard(t)) + (1.0 - pi_) * std::exp(-late_.cum_hazard(t));
  }

  double density(double t) const {
    detail::require_time(t, "MBT density");
    return pi_ * early_.hazard(t) * std::exp(-early_.cum_hazard(t)) +
           (1.0 - pi_) * late_.hazard(t) * std::exp(-late_.cum_hazard(t));
  }

  /// -log S(t), evaluated as a log-sum-exp so deep tails do not underflow.
  double cum_hazard(double t) const {
    detail::require_time(t, "MBT cum_hazard");
    const auto [l1, l2] = log_terms(t);
    const double m = std::max(l1, l2);
    if (m == -detail::kInf) return detail::kInf;
    return -(m + std::log(std::exp(l1 - m) + std::exp(l2 - m)));
  }

  /// f(t)/S(t) written as the survival-weighted average of component hazards.
  double hazard(double t) const {
    detail::require_time(t, "MBT hazard");
    const auto [l1, l2] = log_terms(t);
    const double m = std::max(l1, l2);
    if (m == -detail::kInf) return std::min(early_.hazard(t), late_.hazard(t));
    const double q1 = std::exp(l1 - m);
    const double q2 = std::exp(l2 - m);
    return (q1 * early_.hazard(t) + q2 * late_.hazard(t)) / (q1 + q2);
  }

  double cum_hazard_limit() const {
    const double s1 = std::exp(-early_.cum_hazard_limit());
    const double s2 = std::exp(-late_.cum_hazard_limit());
    const double s = pi_ * s1 + (1.0 - pi_) * s2;
    return s > 0.0 ? -std::log(s) : detail::kInf;
  }

  /**
   * No closed form: Lambda_MBT lies between the two component cumulative
   * hazards, so the component inverses bracket the root, which is then
   * polished by bisection-safeguarded Newton steps (derivative = hazard).
   */
  SampleOutcome invert_cum_hazard(double target) const {
    SampleOutcome out;
    if (detail::trivial_target(target, out)) return out;
    if (target > cum_hazard_limit()) return SampleOutcome::infinite();

    const SampleOutcome a = early_.invert_cum_hazard(target);
    const SampleOutcome b = late_.invert_cum_hazard(target);
    double lo = std::min(a.time, b.time);
    double hi = std::max(a.time, b.time);
    if (std::isinf(lo)) return SampleOutcome::infinite();
    if (std::isinf(hi)) {
      hi = lo;
      while (cum_hazard(hi) < target) {
        hi = 2.0 * hi + 1.0;
        if (std::isinf(hi)) return SampleOutcome::infinite();
      }
    }
    const double tol = 1e-14 * std::max(1.0, target);
    double t = lo;
    for (int iter = 0; iter < 300; ++iter) {
      const double f = cum_hazard(t) - target;
      if (std::abs(f) <= tol) return SampleOutcome{t};
      if (f < 0.0) {
        lo = t;
      } else {
        hi = t;
      }
      if (!(hi > std::nextafter(lo, detail::kInf))) break;
      const double h = hazard(t);
      const double step = t - f / h;
      t = (h > 0.0 && step > lo && step < hi) ? step : 0.5 * (lo + hi);
    }
    const double flo = std::abs(cum_hazard(lo) - target);
    const double fhi = std::abs(cum_hazard(hi) - target);
    return SampleOutcome{flo <= fhi ? lo : hi};
  }

  std::vector<double> breakpoints() const {
    auto out = early_.breakpoints();
    const auto late = late_.breakpoints();
    out.insert(out.end(), late.begin(), late.end());
    return detail::sorted_unique(std::move(out));
  }

 private:
  std::pair<double, double> log_terms(double t) const {
    return {log_pi_ - early_.cum_hazard(t), log_rest_ - late_.cum_hazard(t)};
  }

  double pi_;
  double log_pi_ = 0.0;
  double log_rest_ = 0.0;
  DfrModel early_;
  IfrModel late_;
};

// ---------------------------------------------------------------------------
// Model 6: log-convex, lambda(t) = lambda0 exp(w0 t + sum_k w_k max(0, t - theta_k)).
//
// On segment l = [theta*_l, theta*_{l+1}) the log hazard is linear with
// slope w0 + C*_l, so Lambda is a sum of exponential segments.
// ---------------------------------------------------------------------------
class LcvModel {
 public:
  LcvModel(double lambda0, double w0, GammaProcessDraw measure)
      : lambda0_(lambda0), w0_(w0), g_(std::move(measure)), atoms_(g_) {
    detail::require_domain(lambda0_ > 0.0 && std::isfinite(lambda0_), "LCV: lambda0 must be > 0");
    detail::require_domain(std::isfinite(w0_), "LCV: w0 must be finite");
    const std::size_t count = atoms_.size();
    slope_.resize(count + 1);
    log_knot_hazard_.resize(count + 1);
    knot_cum_.resize(count + 1);
    for (std::size_t l = 0; l <= count; ++l) slope_[l] = w0_ + atoms_.cum_weight(l);
    log_knot_hazard_[0] = std::log(lambda0_);
    knot_cum_[0] = 0.0;
    for (std::size_t l = 1; l <= count; ++l) {
      const double len = atoms_.theta(l) - atoms_.theta(l - 1);
      log_knot_hazard_[l] = log_knot_hazard_[l - 1] + slope_[l - 1] * len;
      knot_cum_[l] = knot_cum_[l - 1] + segment_integral(l - 1, len);
    }
  }

  double baseline() const noexcept { return lambda0_; }
  double initial_slope() const noexcept { return w0_; }
  const GammaProcessDraw& measure() const noexcept { return g_; }
  const OrderedAtoms& ordered() const noexcept { return atoms_; }

  /// Slope of log hazard on segment l (l = 0 is [0, theta*_1)).
  double segment_slope(std::size_t l) const { return slope_.at(l); }

  double log_hazard(double t) const {
    detail::require_time(t, "LCV log_hazard");
    return std::log(lambda0_) + w0_ * t + double_integral_below(g_, t);
  }

  double hazard(double t) const {
    detail::require_time(t, "LCV hazard");
    return lambda0_ * std::exp(w0_ * t + double_integral_below(g_, t));
  }

  double cum_hazard(double t) const {
    detail::require_time(t, "LCV cum_hazard");
    const std::size_t l = detail::last_at_or_below(atoms_.thetas(), t);
    return knot_cum_[l] + segment_integral(l, t - atoms_.theta(l));
  }

  /// Finite exactly when the final log-hazard slope w0 + gamma is negative.
  double cum_hazard_limit() const {
    const double c = slope_.back();
    if (c < -detail::kFlatSlope) return knot_cum_.back() + std::exp(log_knot_hazard_.back()) / (-c);
    return detail::kInf;
  }

  /// On the segment holding the target, solve
  ///   h_k expm1(C s) / C = target - Lambda*_k   for s = T - theta*_k,
  /// i.e. s = log1p(C r / h_k) / C (s = r / h_k when C is zero).
  SampleOutcome invert_cum_hazard(double target) const {
    SampleOutcome out;
    if (detail::trivial_target(target, out)) return out;
    const std::size_t k = detail::last_at_or_below(knot_cum_, target);
    const double r = target - knot_cum_[k];
    const double h = std::exp(log_knot_hazard_[k]);
    const double c = slope_[k];
    const bool last = k == atoms_.size();
    const double hi = last ? detail::kInf : atoms_.theta(k + 1);
    if (!(h > 0.0)) return last ? SampleOutcome::infinite() : SampleOutcome{hi};
    double s = 0.0;
    if (std::abs(c) < detail::kFlatSlope) {
      s = r / h;
    } else {
      const double z = c * r / h;
      if (z <= -1.0) return SampleOutcome::infinite();
      s = std::log1p(z) / c;
    }
    return SampleOutcome{std::clamp(atoms_.theta(k) + s, atoms_.theta(k), hi)};
  }

  std::vector<double> breakpoints() const { return detail::positive_locations(g_); }

 private:
  /// Integral of the hazard over [theta*_l, theta*_l + len].
  double segment_integral(std::size_t l, double len) const {
    if (len <= 0.0) return 0.0;
    const double h = std::exp(log_knot_hazard_[l]);
    const double c = slope_[l];
    if (std::abs(c) < detail::kFlatSlope) return h * len;
    return h * (std::expm1(c * len) / c);
  }

  double lambda0_;
  double w0_;
  GammaProcessDraw g_;
  OrderedAtoms atoms_;
  std::vector<double> slope_;
  std::vector<double> log_knot_hazard_;
  std::vector<double> knot_cum_;
};

// ---------------------------------------------------------------------------
// Tagged union and model-agnostic operations.
// ---------------------------------------------------------------------------

enum class ModelKind { ifr, dfr, lwb, sbt, mbt, lcv };

inline constexpr std::array<ModelKind, 6> kAllModelKinds{ModelKind::ifr, ModelKind::dfr, ModelKind::lwb,
                                                        ModelKind::sbt, ModelKind::mbt, ModelKind::lcv};

inline std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::ifr: return "ifr";
    case ModelKind::dfr: return "dfr";
    case ModelKind::lwb: return "lwb";
    case ModelKind::sbt: return "sbt";
    case ModelKind::mbt: return "mbt";
    case ModelKind::lcv: return "lcv";
  }
  return "?";
}

inline ModelKind parse_model_kind(std::string_view name) {
  for (ModelKind k : kAllModelKinds) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown model '" + std::string(name) + "' (expected ifr|dfr|lwb|sbt|mbt|lcv)");
}

/// Number of Gamma Process draws a model variant consumes.
inline std::size_t draw_count(ModelKind kind) {
  return (kind == ModelKind::sbt || kind == ModelKind::mbt) ? 2 : 1;
}

using HazardModel = std::variant<IfrModel, DfrModel, LwbModel, SbtModel, MbtModel, LcvModel>;

inline ModelKind kind_of(const HazardModel& model) { return static_cast<ModelKind>(model.index()); }

inline double hazard(const HazardModel& model, double t) {
  return std::visit([t](const auto& m) { return m.hazard(t); }, model);
}

inline double cum_hazard(const HazardModel& model, double t) {
  return std::visit([t](const auto& m) { return m.cum_hazard(t); }, model);
}

inline double survival(const HazardModel& model, double t) {
  return std::visit(
      [t](const auto& m) {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, MbtModel>) {
          return m.survival(t);
        } else {
          return std::exp(-m.cum_hazard(t));
        }
      },
      model);
}

inline double density(const HazardModel& model, double t) {
  return std::visit(
      [t](const auto& m) {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, MbtModel>) {
          return m.density(t);
        } else {
          return m.hazard(t) * std::exp(-m.cum_hazard(t));
        }
      },
      model);
}

/// Lambda(infinity); finite means the failure-time law is defective.
inline double cum_hazard_limit(const HazardModel& model) {
  return std::visit([](const auto& m) { return m.cum_hazard_limit(); }, model);
}

inline bool is_defective(const HazardModel& model) { return std::isfinite(cum_hazard_limit(model)); }

inline SampleOutcome invert_cum_hazard(const HazardModel& model, double target) {
  return std::visit([target](const auto& m) { return m.invert_cum_hazard(target); }, model);
}

/// Locations in (0, inf) where the hazard jumps or its log has a kink.
inline std::vector<double> breakpoints(const HazardModel& model) {
  return std::visit([](const auto& m) { return m.breakpoints(); }, model);
}

/// Inverse-transform draw: T solves Lambda(T) = -log U. The mixture draws
/// its component first (no variate is spent when pi = 1).
inline SampleOutcome sample_failure(const HazardModel& model, RandomStream& stream) {
  if (const auto* mbt = std::get_if<MbtModel>(&model)) {
    const double pi = mbt->mixture_weight();
    bool early = true;
    if (pi < 1.0) {
      const std::array<double, 2> w{pi, 1.0 - pi};
      early = sample_categorical(stream, w) == 0;
    }
    const double target = -std::log(sample_uniform(stream));
    return early ? mbt->early().invert_cum_hazard(target) : mbt->late().invert_cum_hazard(target);
  }
  return invert_cum_hazard(model, -std::log(sample_uniform(stream)));
}

/**
 * n independent failure times. With a horizon tau, draws beyond tau (and
 * never-failing draws) become records censored at tau. Without one, a
 * defective model is rejected up front since some draws would be infinite.
 */
inline Dataset simulate_dataset(const HazardModel& model, std::size_t n, std::optional<double> tau,
                                RandomStream& stream) {
  detail::require_domain(n >= 1, "simulate_dataset: n must be >= 1");
  if (tau) detail::require_domain(*tau > 0.0 && std::isfinite(*tau), "simulate_dataset: tau must be > 0");
  if (!tau && is_defective(model)) {
    throw ConfigError("model '" + std::string(to_string(kind_of(model))) +
                      "' is defective (finite total cumulative hazard, some units never fail); "
                      "set a censoring horizon tau");
  }
  Dataset data;
  data.tau = tau;
  data.records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const SampleOutcome s = sample_failure(model, stream);
    if (tau && s.time > *tau) {
      data.records.push_back({*tau, false});
    } else {
      data.records.push_back({s.time, true});
    }
  }
  return data;
}

/// Scalar model inputs with no prior attached.
struct ModelInputs {
  std::optional<double> symmetry_point;  // LWB a
  std::optional<double> mixture_weight;  // MBT pi
  bool mixture_weight_prior = false;     // draw pi ~ Uniform(0,1) when no value is supplied
};

/**
 * Fills the scalar parameters from their conditional priors:
 *   lambda0 | gamma ~ Exp(nu / gamma)          (IFR, DFR, LWB; SBT uses gamma of G2;
 *                                               MBT draws lambda01|gamma1, lambda02|gamma2)
 *   log lambda0, w0 ~ Normal(0, (gamma/nu)^2)  (LCV)
 */
inline HazardModel draw_model_params(ModelKind kind, std::span<const GammaProcessDraw> draws,
                                     const HyperParams& hyper, const ModelInputs& inputs,
                                     RandomStream& stream) {
  detail::require_domain(hyper.nu > 0.0, "draw_model_params: nu must be > 0");
  if (draws.size() != draw_count(kind)) {
    throw ConfigError("model '" + std::string(to_string(kind)) + "' needs " +
                      std::to_string(draw_count(kind)) + " Gamma Process draw(s), got " +
                      std::to_string(draws.size()));
  }
  const auto baseline = [&](const GammaProcessDraw& g) {
    return sample_exponential(stream, hyper.nu / g.gamma());
  };
  switch (kind) {
    case ModelKind::ifr: return IfrModel(baseline(draws[0]), draws[0]);
    case ModelKind::dfr: return DfrModel(baseline(draws[0]), draws[0]);
    case ModelKind::lwb: {
      if (!inputs.symmetry_point) throw ConfigError("LWB model requires the symmetry point 'a'");
      return LwbModel(baseline(draws[0]), *inputs.symmetry_point, draws[0]);
    }
    case ModelKind::sbt: return SbtModel(baseline(draws[1]), draws[0], draws[1]);
    case ModelKind::mbt: {
      double pi = 0.0;
      if (inputs.mixture_weight) {
        pi = *inputs.mixture_weight;
      } else if (inputs.mixture_weight_prior) {
        pi = sample_uniform(stream);
      } else {
        throw ConfigError("MBT model requires the mixture weight 'pi'");
      }
      const double l01 = baseline(draws[0]);
      const double l02 = baseline(draws[1]);
      return MbtModel(pi, l01, draws[0], l02, draws[1]);
    }
    case ModelKind::lcv: {
      const double sd = draws[0].gamma() / hyper.nu;
      const double lambda0 = std::exp(sample_normal(stream, 0.0, sd));
      const double w0 = sample_normal(stream, 0.0, sd);
      return LcvModel(lambda0, w0, draws[0]);
    }
  }
  throw std::logic_error("draw_model_params: unhandled model kind");
}

}  // namespace gapphaz
