#pragma once

#include <cmath>
#include <limits>

#include "gapphaz/dataset.hpp"
#include "gapphaz/errors.hpp"
#include "gapphaz/hazard_models.hpp"
#include "gapphaz/hyper_params.hpp"
#include "gapphaz/rng.hpp"

namespace gapphaz {

enum class Censoring {
  common_horizon,  // every censored record contributes Lambda(tau)
  per_record,      // each censored record contributes Lambda(its own time)
};

/**
 * Censored-data log-likelihood
 *
 *   sum_obs log lambda(t_i) - sum_obs Lambda(t_i) - sum_cens Lambda(c_i)
 *
 * With Censoring::common_horizon, c_i = tau for every censored record and
 * the dataset must carry tau if anything is censored. Returns -inf when an
 * observed time falls where the hazard is zero.
 */
inline double log_likelihood(const HazardModel& model, const Dataset& data,
                             Censoring mode = Censoring::common_horizon) {
  detail::require_domain(!data.empty(), "log_likelihood: dataset is empty");
  const std::size_t censored = data.censored_count();
  if (mode == Censoring::common_horizon && censored > 0) {
    if (!data.tau) throw ConfigError("log_likelihood: dataset has censored records but no censoring horizon tau");
    detail::require_domain(*data.tau > 0.0, "log_likelihood: tau must be > 0");
  }
  double ll = 0.0;
  for (const auto& r : data.records) {
    if (!r.observed) continue;
    detail::require_domain(r.time > 0.0, "log_likelihood: observed times must be > 0");
    const double h = hazard(model, r.time);
    if (!(h > 0.0)) return -std::numeric_limits<double>::infinity();
    ll += std::log(h) - cum_hazard(model, r.time);
  }
  if (censored > 0) {
    if (mode == Censoring::common_horizon) {
      ll -= static_cast<double>(censored) * cum_hazard(model, *data.tau);
    } else {
      for (const auto& r : data.records) {
        if (!r.observed) ll -= cum_hazard(model, r.time);
      }
    }
  }
  return ll;
}

struct GappHyperDraw {
  double alpha = 0.0;
  double beta = 0.0;
  double phi = 0.0;
};

/// alpha ~ Ga(a1, a2), beta ~ Ga(b1, b2), phi ~ Ga(f1, f2), drawn in that order.
inline GappHyperDraw sample_hyperparams(const HyperParams& hyper, RandomStream& stream) {
  GappHyperDraw d;
  d.alpha = sample_gamma(stream, hyper.a1, hyper.a2);
  d.beta = sample_gamma(stream, hyper.b1, hyper.b2);
  d.phi = sample_gamma(stream, hyper.f1, hyper.f2);
  return d;
}

/// log density of Ga(shape, rate) at x; -inf outside the support.
inline double gamma_log_density(double x, double shape, double rate) {
  if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
  return shape * std::log(rate) - std::lgamma(shape) + (shape - 1.0) * std::log(x) - rate * x;
}

inline double log_hyperprior(double alpha, double beta, double phi, const HyperParams& hyper) {
  if (!(alpha > 0.0 && beta > 0.0 && phi > 0.0)) return -std::numeric_limits<double>::infinity();
  return gamma_log_density(alpha, hyper.a1, hyper.a2) + gamma_log_density(beta, hyper.b1, hyper.b2) +
         gamma_log_density(phi, hyper.f1, hyper.f2);
}

}  // namespace gapphaz
