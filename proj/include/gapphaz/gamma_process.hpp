#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gapphaz/errors.hpp"
#include "gapphaz/rng.hpp"

namespace gapphaz {

struct ExponentialBase {
  double rate = 1.0;
};

/// Normal(mean, sd^2) restricted to [0, inf); negative proposals are rejected.
struct NormalBase {
  double mean = 0.0;
  double sd = 1.0;
};

using BaseMeasure = std::variant<ExponentialBase, NormalBase>;

inline void validate(const BaseMeasure& base) {
  std::visit(
      [](const auto& b) {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, ExponentialBase>) {
          detail::require_domain(b.rate > 0.0, "exponential base measure: rate must be > 0");
        } else {
          detail::require_domain(b.sd > 0.0, "normal base measure: sd must be > 0");
          detail::require_domain(std::isfinite(b.mean), "normal base measure: mean must be finite");
        }
      },
      base);
}

inline double sample_base(const BaseMeasure& base, RandomStream& stream) {
  return std::visit(
      [&stream](const auto& b) {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, ExponentialBase>) {
          return sample_exponential(stream, b.rate);
        } else {
          // Rejection needs ~1/P(X>=0) proposals; refuse bases that put
          // essentially no mass on the positive half-line.
          detail::require_domain(b.mean / b.sd > -8.0,
                                 "normal base measure: almost no mass on [0, inf)");
          for (;;) {
            const double x = sample_normal(stream, b.mean, b.sd);
            if (x >= 0.0) return x;
          }
        }
      },
      base);
}

/// Gamma Process Prior GaPP(alpha * H0, beta) truncated at `truncation` atoms.
struct GaPPParams {
  double alpha = 3.0;
  double beta = 1.0;
  std::size_t truncation = 100;
  BaseMeasure base = ExponentialBase{1.0};

  void validate() const {
    detail::require_domain(alpha > 0.0 && std::isfinite(alpha), "GaPP: alpha must be > 0");
    detail::require_domain(beta > 0.0 && std::isfinite(beta), "GaPP: beta must be > 0");
    detail::require_domain(truncation >= 1, "GaPP: truncation level K must be >= 1");
    gapphaz::validate(base);
  }
};

/// Stick-breaking weights v_k * prod_{l<k}(1 - v_l) for k < K, closed by the
/// remaining stick prod_{l<K}(1 - v_l) at k = K.
inline std::vector<double> stick_weights(std::span<const double> sticks, std::size_t count) {
  detail::require_domain(count >= 1, "stick_weights: K must be >= 1");
  if (sticks.size() + 1 != count) {
    throw std::domain_error("stick_weights: expected K-1 = " + std::to_string(count - 1) +
                            " sticks, got " + std::to_string(sticks.size()));
  }
  std::vector<double> out(count);
  double remaining = 1.0;
  for (std::size_t k = 0; k < sticks.size(); ++k) {
    const double v = sticks[k];
    detail::require_domain(v > 0.0 && v < 1.0, "stick_weights: sticks must lie in (0,1)");
    out[k] = v * remaining;
    remaining *= (1.0 - v);
  }
  out.back() = remaining;
  return out;
}

/**
 * A truncated draw G(du) = gamma * sum_k w~_k delta_{theta_k}(du).
 *
 * Atoms keep their draw order. Use OrderedAtoms for the sorted view with
 * prefix sums. Immutable once built.
 */
class GammaProcessDraw {
 public:
  GammaProcessDraw() = default;

  /// Build from the raw stick-breaking variables.
  static GammaProcessDraw from_sticks(double gamma, std::vector<double> thetas,
                                      std::vector<double> sticks) {
    detail::require_domain(gamma > 0.0 && std::isfinite(gamma), "GammaProcessDraw: gamma must be > 0");
    detail::require_domain(!thetas.empty(), "GammaProcessDraw: at least one atom is required");
    for (double th : thetas) {
      detail::require_domain(th >= 0.0 && std::isfinite(th), "GammaProcessDraw: atoms must be finite and >= 0");
    }
    GammaProcessDraw g;
    g.unscaled_ = stick_weights(sticks, thetas.size());
    g.gamma_ = gamma;
    g.thetas_ = std::move(thetas);
    g.sticks_ = std::move(sticks);
    g.weights_.resize(g.unscaled_.size());
    std::transform(g.unscaled_.begin(), g.unscaled_.end(), g.weights_.begin(),
                   [gamma](double u) { return gamma * u; });
    return g;
  }

  /**
   * Build from explicit (location, weight) pairs, e.g. for hand-constructed
   * measures. gamma is the weight total; sticks are recovered from the
   * weight sequence. An empty atom list gives the zero measure.
   */
  static GammaProcessDraw from_atoms(std::vector<double> thetas, std::vector<double> weights) {
    if (thetas.size() != weights.size()) {
      throw std::domain_error("GammaProcessDraw: thetas and weights differ in length");
    }
    GammaProcessDraw g;
    double total = 0.0;
    for (std::size_t k = 0; k < thetas.size(); ++k) {
      detail::require_domain(thetas[k] >= 0.0 && std::isfinite(thetas[k]),
                             "GammaProcessDraw: atoms must be finite and >= 0");
      detail::require_domain(weights[k] >= 0.0 && std::isfinite(weights[k]),
                             "GammaProcessDraw: weights must be finite and >= 0");
      total += weights[k];
    }
    g.gamma_ = total;
    g.unscaled_.resize(weights.size(), 0.0);
    if (total > 0.0) {
      for (std::size_t k = 0; k < weights.size(); ++k) g.unscaled_[k] = weights[k] / total;
      double remaining = 1.0;
      for (std::size_t k = 0; k + 1 < weights.size(); ++k) {
        const double v = remaining > 0.0 ? std::clamp(g.unscaled_[k] / remaining, 0.0, 1.0) : 0.0;
        g.sticks_.push_back(v);
        remaining -= g.unscaled_[k];
      }
    } else if (!weights.empty()) {
      g.sticks_.assign(weights.size() - 1, 0.0);
    }
    g.thetas_ = std::move(thetas);
    g.weights_ = std::move(weights);
    return g;
  }

  double gamma() const noexcept { return gamma_; }
  std::size_t size() const noexcept { return thetas_.size(); }
  bool empty() const noexcept { return thetas_.empty(); }
  std::span<const double> thetas() const noexcept { return thetas_; }
  std::span<const double> sticks() const noexcept { return sticks_; }
  std::span<const double> unscaled_weights() const noexcept { return unscaled_; }
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  double gamma_ = 0.0;
  std::vector<double> thetas_;
  std::vector<double> sticks_;
  std::vector<double> unscaled_;
  std::vector<double> weights_;
};

/// theta_k ~ H0, v_k ~ Beta(1, alpha), gamma ~ Ga(alpha, beta). Draw order:
/// all atoms, then all sticks, then gamma.
inline GammaProcessDraw draw_gapp(const GaPPParams& params, RandomStream& stream) {
  params.validate();
  const std::size_t count = params.truncation;
  std::vector<double> thetas(count);
  for (auto& th : thetas) th = sample_base(params.base, stream);
  std::vector<double> sticks(count - 1);
  for (auto& v : sticks) v = sample_beta(stream, 1.0, params.alpha);
  const double gamma = sample_gamma(stream, params.alpha, params.beta);
  return GammaProcessDraw::from_sticks(gamma, std::move(thetas), std::move(sticks));
}

// Measure-level integrals. Indicator conventions: strict below / strict above.

/// int_0^t G(du) = sum_k w_k I(theta_k < t)
inline double integral_below(const GammaProcessDraw& g, double t) {
  detail::require_time(t, "integral_below");
  double s = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.thetas()[k] < t) s += g.weights()[k];
  }
  return s;
}

/// int_t^inf G(du) = sum_k w_k I(theta_k > t)
inline double integral_above(const GammaProcessDraw& g, double t) {
  detail::require_time(t, "integral_above");
  double s = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.thetas()[k] > t) s += g.weights()[k];
  }
  return s;
}

/// int_0^t int_0^u G(dv) du = sum_k w_k max(t - theta_k, 0)
inline double double_integral_below(const GammaProcessDraw& g, double t) {
  detail::require_time(t, "double_integral_below");
  double s = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) s += g.weights()[k] * std::max(t - g.thetas()[k], 0.0);
  return s;
}

/// int_0^t int_u^inf G(dv) du = sum_k w_k min(t, theta_k)
inline double double_integral_above(const GammaProcessDraw& g, double t) {
  detail::require_time(t, "double_integral_above");
  double s = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) s += g.weights()[k] * std::min(t, g.thetas()[k]);
  return s;
}

/**
 * Atoms re-indexed in ascending location, with theta*_0 = 0 prepended.
 *
 * Index l runs over 0..size(); entry 0 is the origin with zero weight.
 *   cum_weight(l)  C*_l = sum_{k<=l} w*_k
 *   cum_moment(l)  D*_l = sum_{k<=l} w*_k theta*_k
 *   tail_weight(l)      = sum_{k>l}  w*_k   (accumulated from the top, so it
 *                                            is exactly 0 at l = size())
 * Ties keep draw order (stable sort) and are not merged.
 */
class OrderedAtoms {
 public:
  OrderedAtoms() : thetas_{0.0}, weights_{0.0}, cum_{0.0}, moment_{0.0}, tail_{0.0} {}

  explicit OrderedAtoms(const GammaProcessDraw& g) {
    const std::size_t count = g.size();
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&g](std::size_t i, std::size_t j) {
      return g.thetas()[i] < g.thetas()[j];
    });
    thetas_.reserve(count + 1);
    weights_.reserve(count + 1);
    thetas_.push_back(0.0);
    weights_.push_back(0.0);
    for (std::size_t i : order) {
      thetas_.push_back(g.thetas()[i]);
      weights_.push_back(g.weights()[i]);
    }
    cum_.assign(count + 1, 0.0);
    moment_.assign(count + 1, 0.0);
    tail_.assign(count + 1, 0.0);
    for (std::size_t l = 1; l <= count; ++l) {
      cum_[l] = cum_[l - 1] + weights_[l];
      moment_[l] = moment_[l - 1] + weights_[l] * thetas_[l];
    }
    for (std::size_t l = count; l-- > 0;) tail_[l] = tail_[l + 1] + weights_[l + 1];
  }

  std::size_t size() const noexcept { return thetas_.size() - 1; }
  double theta(std::size_t l) const { return thetas_.at(l); }
  double weight(std::size_t l) const { return weights_.at(l); }
  double cum_weight(std::size_t l) const { return cum_.at(l); }
  double cum_moment(std::size_t l) const { return moment_.at(l); }
  double tail_weight(std::size_t l) const { return tail_.at(l); }

  /// Locations including the leading 0.
  std::span<const double> thetas() const noexcept { return thetas_; }
  std::span<const double> cum_weights() const noexcept { return cum_; }
  std::span<const double> cum_moments() const noexcept { return moment_; }

 private:
  std::vector<double> thetas_;
  std::vector<double> weights_;
  std::vector<double> cum_;
  std::vector<double> moment_;
  std::vector<double> tail_;
};

inline OrderedAtoms ordered_view(const GammaProcessDraw& g) { return OrderedAtoms(g); }

/// E[prod_{l<=k}(1 - v_l)] = (alpha / (1 + alpha))^k: the expected unscaled
/// mass left after the first k atoms.
inline double expected_tail_mass(double alpha, std::size_t k) {
  detail::require_domain(alpha > 0.0, "expected_tail_mass: alpha must be > 0");
  return std::pow(alpha / (1.0 + alpha), static_cast<double>(k));
}

/// Realised unscaled mass left after the first k atoms (draw order).
inline double tail_mass(const GammaProcessDraw& g, std::size_t k) {
  const auto w = g.unscaled_weights();
  double s = 0.0;
  for (std::size_t i = std::min(k, w.size()); i < w.size(); ++i) s += w[i];
  return s;
}

}  // namespace gapphaz
