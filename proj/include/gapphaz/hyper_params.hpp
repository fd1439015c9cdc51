#pragma once

#include "gapphaz/errors.hpp"

namespace gapphaz {

/// Hyperprior constants: alpha ~ Ga(a1, a2), beta ~ Ga(b1, b2),
/// phi ~ Ga(f1, f2) (shape, rate), and the scale nu of the baseline-rate
/// priors lambda0 | gamma ~ Exp(nu / gamma).
struct HyperParams {
  double a1 = 1.0, a2 = 1.0;
  double b1 = 1.0, b2 = 1.0;
  double f1 = 1.0, f2 = 1.0;
  double nu = 1.0;

  void validate() const {
    detail::require_domain(a1 > 0 && a2 > 0 && b1 > 0 && b2 > 0 && f1 > 0 && f2 > 0,
                           "HyperParams: Gamma hyperprior parameters must be > 0");
    detail::require_domain(nu > 0, "HyperParams: nu must be > 0");
  }
};

}  // namespace gapphaz
