#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "gapphaz/demo.hpp"
#include "gapphaz/empirical.hpp"
#include "gapphaz/gamma_process.hpp"
#include "gapphaz/hazard_models.hpp"
#include "gapphaz/inference.hpp"
#include "gapphaz/quadrature.hpp"
#include "gapphaz/rng.hpp"

/**
 * End-to-end verification checks. Each check reports a measured error and
 * the tolerance it must not exceed; `criterion` groups checks by the
 * acceptance criterion they implement (1-9; 10 is CLI determinism and
 * lives with the CLI).
 */
namespace gapphaz::validation {

struct Options {
  std::uint64_t seed = demo::kDefaultSeed;
  double tolerance_scale = 1.0;
};

struct CheckResult {
  int criterion = 0;
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

namespace detail {

inline CheckResult make(int criterion, std::string name, double measured, double tolerance,
                        const Options& opt) {
  const double tol = tolerance * opt.tolerance_scale;
  const bool ok = !std::isnan(measured) && measured <= tol;
  return CheckResult{criterion, std::move(name), measured, tol, ok};
}

inline double rel_err(double got, double want) {
  if (got == want) return 0.0;
  return std::abs(got - want) / std::max(std::abs(want), std::numeric_limits<double>::min());
}

inline double uniform_in(RandomStream& s, double lo, double hi) { return lo + (hi - lo) * sample_uniform(s); }

inline std::string label(ModelKind k) { return std::string(to_string(k)); }

}  // namespace detail

struct Fixture {
  demo::DemoDraws draws;
  std::vector<HazardModel> models;  // indexed like kAllModelKinds
  RandomStream root;

  explicit Fixture(std::uint64_t seed) : draws(demo::make_draws(seed)), root(new_stream(seed)) {
    for (ModelKind k : kAllModelKinds) models.push_back(demo::make_model(k, draws));
  }

  const HazardModel& model(ModelKind k) const { return models[static_cast<std::size_t>(k)]; }
  RandomStream stream(std::uint64_t id) const { return root.split(100 + id); }
};

// 1. |Lambda(T(x)) - x| <= 1e-9 max(1, x) for 10^4 targets in (0, Lambda(t_max)].
inline std::vector<CheckResult> check_round_trip(const Fixture& fx, const Options& opt) {
  std::vector<CheckResult> out;
  for (ModelKind k : kAllModelKinds) {
    const HazardModel& m = fx.model(k);
    RandomStream s = fx.stream(1);
    const double top = cum_hazard(m, demo::kTimeHorizon);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double x = top * (1.0 - sample_uniform(s));
      const SampleOutcome t = invert_cum_hazard(m, x);
      const double err = t.is_finite() ? std::abs(cum_hazard(m, t.time) - x) / std::max(1.0, x)
                                       : std::numeric_limits<double>::infinity();
      worst = std::max(worst, err);
    }
    out.push_back(detail::make(1, "inversion round-trip " + detail::label(k), worst, 1e-9, opt));
  }
  return out;
}

// 2. Adaptive quadrature of the hazard matches Lambda(t) at 20 random t.
inline std::vector<CheckResult> check_quadrature(const Fixture& fx, const Options& opt) {
  std::vector<CheckResult> out;
  for (ModelKind k : kAllModelKinds) {
    const HazardModel& m = fx.model(k);
    RandomStream s = fx.stream(2);
    const auto bps = breakpoints(m);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double t = detail::uniform_in(s, 0.0, demo::kTimeHorizon);
      const double q = integrate_piecewise([&m](double u) { return hazard(m, u); }, 0.0, t, bps);
      worst = std::max(worst, detail::rel_err(cum_hazard(m, t), q));
    }
    out.push_back(detail::make(2, "quadrature vs cum_hazard " + detail::label(k), worst, 1e-6, opt));
  }
  return out;
}

// 3. KS distance of 10^4 inverse-transform samples to the analytic law.
inline std::vector<CheckResult> check_sampling_fit(const Fixture& fx, const Options& opt) {
  std::vector<CheckResult> out;
  for (ModelKind k : kAllModelKinds) {
    const HazardModel& m = fx.model(k);
    RandomStream s = fx.stream(3);
    std::vector<double> xs(10000);
    for (auto& x : xs) x = sample_failure(m, s).time;
    const double d = ks_distance(xs, [&m](double t) { return std::isinf(t) ? 1.0 : 1.0 - survival(m, t); });
    out.push_back(detail::make(3, "KS fit n=1e4 " + detail::label(k), d, 0.025, opt));
  }
  return out;
}

// 4. Truncation mass: Monte Carlo tails after k atoms vs (alpha/(1+alpha))^k.
inline std::vector<CheckResult> check_truncation_mass(const Fixture& fx, const Options& opt) {
  RandomStream s = fx.stream(4);
  const GaPPParams prior = demo::early_prior();
  constexpr int replicates = 1000;
  std::vector<double> tail4, tail40;
  for (int r = 0; r < replicates; ++r) {
    const GammaProcessDraw g = draw_gapp(prior, s);
    tail4.push_back(tail_mass(g, 4));
    tail40.push_back(tail_mass(g, 40));
  }
  const auto z_score = [](const std::vector<double>& v, double expected) {
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double se = std::sqrt(ss / (n - 1.0) / n);
    return std::abs(mean - expected) / se;
  };
  std::vector<CheckResult> out;
  out.push_back(detail::make(4, "tail mass after 4 atoms (z-score vs 0.31640625)",
                             z_score(tail4, expected_tail_mass(prior.alpha, 4)), 3.0, opt));
  out.push_back(detail::make(4, "tail mass after 40 atoms (z-score vs 0.75^40)",
                             z_score(tail40, expected_tail_mass(prior.alpha, 40)), 3.0, opt));
  // A single draw leaving 1e-6 of the mass after 40 atoms should be typical:
  // it must sit inside the central 95% of the replicate tails.
  std::sort(tail40.begin(), tail40.end());
  const double lo = tail40[static_cast<std::size_t>(0.025 * replicates)];
  const double hi = tail40[static_cast<std::size_t>(0.975 * replicates)];
  const double reported = 1e-6;
  const double outside = reported < lo ? std::log10(lo / reported) : (reported > hi ? std::log10(reported / hi) : 0.0);
  out.push_back(detail::make(4, "1e-6 tail after 40 atoms within central 95% (log10 excess)", outside, 0.0, opt));
  return out;
}

// 5. Exact model identities at 10^3 random points.
inline std::vector<CheckResult> check_identities(const Fixture& fx, const Options& opt) {
  std::vector<CheckResult> out;
  const auto& d = fx.draws;
  RandomStream s = fx.stream(5);

  {
    const auto& sbt = fx.model(ModelKind::sbt);
    const DfrModel dfr(0.0, d.early);
    const IfrModel ifr(0.0, d.late);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double t = detail::uniform_in(s, 0.0, demo::kTimeHorizon);
      worst = std::max(worst, detail::rel_err(hazard(sbt, t), demo::kBaseline + dfr.hazard(t) + ifr.hazard(t)));
    }
    out.push_back(detail::make(5, "SBT superposition", worst, 1e-12, opt));
  }
  {
    const auto& mbt = fx.model(ModelKind::mbt);
    const DfrModel dfr(demo::kBaseline, d.early);
    const IfrModel ifr(demo::kBaseline, d.late);
    const double pi = demo::kMixtureWeight;
    double ws = 0.0, wd = 0.0, wh = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double t = detail::uniform_in(s, 0.0, demo::kTimeHorizon);
      const double s1 = std::exp(-dfr.cum_hazard(t)), s2 = std::exp(-ifr.cum_hazard(t));
      ws = std::max(ws, detail::rel_err(survival(mbt, t), pi * s1 + (1 - pi) * s2));
      wd = std::max(wd, detail::rel_err(density(mbt, t), pi * dfr.hazard(t) * s1 + (1 - pi) * ifr.hazard(t) * s2));
      wh = std::max(wh, detail::rel_err(hazard(mbt, t) * survival(mbt, t), density(mbt, t)));
    }
    out.push_back(detail::make(5, "MBT survival mixture", ws, 1e-12, opt));
    out.push_back(detail::make(5, "MBT density mixture", wd, 1e-12, opt));
    out.push_back(detail::make(5, "MBT hazard * survival = density", wh, 1e-12, opt));
  }
  {
    const auto& lwb = fx.model(ModelKind::lwb);
    const double a = demo::kSymmetryPoint;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double off = detail::uniform_in(s, 0.0, a);
      worst = std::max(worst, detail::rel_err(hazard(lwb, a - off), hazard(lwb, a + off)));
    }
    out.push_back(detail::make(5, "LWB reflection symmetry about a", worst, 1e-12, opt));
  }
  {
    // Log-hazard slope on each segment, by a long-double finite difference of
    // the defining expression, against w0 + C*_l.
    const auto& lcv = std::get<LcvModel>(fx.model(ModelKind::lcv));
    const auto& oa = lcv.ordered();
    const auto log_hazard_ld = [&](long double t) {
      long double v = std::log(static_cast<long double>(demo::kLcvBaseline)) +
                      static_cast<long double>(demo::kLcvInitialSlope) * t;
      for (std::size_t k = 0; k < d.early.size(); ++k) {
        const long double ex = t - static_cast<long double>(d.early.thetas()[k]);
        if (ex > 0) v += static_cast<long double>(d.early.weights()[k]) * ex;
      }
      return v;
    };
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double t = detail::uniform_in(s, 0.0, demo::kTimeHorizon);
      const std::size_t l = gapphaz::detail::last_at_or_below(oa.thetas(), t);
      const long double lo = oa.theta(l);
      const long double hi = l < oa.size() ? static_cast<long double>(oa.theta(l + 1)) : lo + 1.0L;
      if (!(hi > lo)) continue;
      const long double t1 = lo + 0.25L * (hi - lo), t2 = lo + 0.75L * (hi - lo);
      const long double fd = (log_hazard_ld(t2) - log_hazard_ld(t1)) / (t2 - t1);
      const double c = lcv.segment_slope(l);
      worst = std::max(worst, static_cast<double>(std::abs(fd - c) / std::max(1.0L, std::abs(fd))));
    }
    out.push_back(detail::make(5, "LCV log-hazard slope = w0 + C*_l", worst, 1e-12, opt));
  }
  return out;
}

// 6. Shape invariants on a dense grid augmented with breakpoints.
inline std::vector<CheckResult> check_shapes(const Fixture& fx, const Options& opt) {
  std::vector<CheckResult> out;
  const auto grid_for = [](const HazardModel& m) {
    std::vector<double> g;
    for (int i = 0; i <= 2000; ++i) g.push_back(demo::kTimeHorizon * i / 2000.0);
    for (double b : breakpoints(m)) {
      if (b <= demo::kTimeHorizon) {
        g.push_back(b);
        g.push_back(std::nextafter(b, 0.0));
      }
    }
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
  };
  const auto monotone_violation = [](const std::vector<double>& v, bool increasing) {
    double worst = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i) {
      const double step = increasing ? v[i - 1] - v[i] : v[i] - v[i - 1];
      worst = std::max(worst, step / std::max(1.0, std::abs(v[i])));
    }
    return worst;
  };

  {
    const auto& m = fx.model(ModelKind::ifr);
    std::vector<double> h;
    for (double t : grid_for(m)) h.push_back(hazard(m, t));
    out.push_back(detail::make(6, "IFR hazard non-decreasing", monotone_violation(h, true), 1e-12, opt));
  }
  {
    const auto& m = fx.model(ModelKind::dfr);
    std::vector<double> h;
    for (double t : grid_for(m)) h.push_back(hazard(m, t));
    out.push_back(detail::make(6, "DFR hazard non-increasing", monotone_violation(h, false), 1e-12, opt));
  }
  {
    const auto& m = fx.model(ModelKind::lwb);
    const double a = demo::kSymmetryPoint;
    std::vector<double> left, right;
    double below_min = 0.0;
    auto grid = grid_for(m);
    grid.push_back(a);
    std::sort(grid.begin(), grid.end());
    for (double t : grid) {
      const double h = hazard(m, t);
      below_min = std::max(below_min, hazard(m, a) - h);
      (t <= a ? left : right).push_back(h);
    }
    const double err = std::abs(hazard(m, a) - demo::kBaseline) + below_min +
                       monotone_violation(left, false) + monotone_violation(right, true);
    out.push_back(detail::make(6, "LWB minimum lambda0 at t=a, monotone either side", err, 1e-12, opt));
  }
  {
    const auto& m = std::get<LcvModel>(fx.model(ModelKind::lcv));
    double worst = 0.0;
    const int n = 4000;
    const double step = demo::kTimeHorizon / n;
    for (int i = 1; i < n; ++i) {
      const double t = step * i;
      const double d2 = m.log_hazard(t + step) - 2.0 * m.log_hazard(t) + m.log_hazard(t - step);
      worst = std::max(worst, -d2);
    }
    out.push_back(detail::make(6, "LCV log-hazard convex (max negative 2nd difference)", worst, 1e-9, opt));
  }
  for (ModelKind k : kAllModelKinds) {
    const auto& m = fx.model(k);
    std::vector<double> cum;
    for (double t : grid_for(m)) cum.push_back(cum_hazard(m, t));
    const double err = std::abs(cum_hazard(m, 0.0)) + monotone_violation(cum, true);
    out.push_back(detail::make(6, "Lambda(0)=0 and non-decreasing " + detail::label(k), err, 1e-12, opt));
  }
  return out;
}

// 7. Likelihood reduces to the exponential model under a constant hazard.
inline std::vector<CheckResult> check_likelihood(const Fixture& fx, const Options& opt) {
  std::vector<CheckResult> out;
  const auto far_atom = GammaProcessDraw::from_atoms({10.0}, {1.0});
  {
    const HazardModel m = IfrModel(1.0, far_atom);
    Dataset data{{{1.0, true}, {2.0, true}, {5.0, false}}, 5.0};
    out.push_back(detail::make(7, "constant-hazard log-likelihood = -8", std::abs(log_likelihood(m, data) + 8.0), 0.0, opt));
  }
  {
    const auto atom = GammaProcessDraw::from_atoms({1e6}, {1.0});
    const double tau = 2.0;
    RandomStream s = fx.stream(7);
    const Dataset data = simulate_dataset(IfrModel(0.7, atom), 500, tau, s);
    double total_time = 0.0;
    for (const auto& r : data.records) total_time += r.time;
    const double mle = static_cast<double>(data.observed_count()) / total_time;

    const auto ll = [&](double rate) { return log_likelihood(IfrModel(rate, atom), data); };
    double lo = 1e-3, hi = 5.0, best = lo;
    for (int round = 0; round < 8; ++round) {
      double best_ll = -std::numeric_limits<double>::infinity();
      const int pts = 200;
      for (int i = 0; i <= pts; ++i) {
        const double r = lo + (hi - lo) * i / pts;
        const double v = ll(r);
        if (v > best_ll) {
          best_ll = v;
          best = r;
        }
      }
      const double cell = (hi - lo) / pts;
      lo = std::max(1e-12, best - cell);
      hi = best + cell;
    }
    out.push_back(detail::make(7, "grid-search MLE of lambda0 vs n0/(sum t + (n-n0) tau)", std::abs(best - mle), 1e-6, opt));
  }
  return out;
}

// 8. Kaplan-Meier against 1 - ECDF and a hand-computed censored example.
inline std::vector<CheckResult> check_kaplan_meier(const Fixture& fx, const Options& opt) {
  std::vector<CheckResult> out;
  {
    RandomStream s = fx.stream(8);
    const Dataset data = simulate_dataset(fx.model(ModelKind::ifr), 200, std::nullopt, s);
    const StepFunction km = kaplan_meier(data);
    std::vector<double> times;
    for (const auto& r : data.records) times.push_back(r.time);
    std::sort(times.begin(), times.end());
    const double n = static_cast<double>(times.size());
    double worst = 0.0;
    std::vector<double> probes = times;
    for (std::size_t i = 0; i + 1 < times.size(); ++i) probes.push_back(0.5 * (times[i] + times[i + 1]));
    probes.push_back(0.5 * times.front());
    for (double t : probes) {
      const auto below = static_cast<double>(std::upper_bound(times.begin(), times.end(), t) - times.begin());
      worst = std::max(worst, std::abs(km(t) - (1.0 - below / n)));
    }
    out.push_back(detail::make(8, "Kaplan-Meier = 1 - ECDF without censoring (n=200)", worst, 1e-12, opt));
  }
  {
    const Dataset data{{{1.0, true}, {2.0, false}, {3.0, true}}, std::nullopt};
    const StepFunction km = kaplan_meier(data);
    const double err = std::abs(km(0.5) - 1.0) + std::abs(km(1.0) - 2.0 / 3.0) + std::abs(km(2.5) - 2.0 / 3.0) +
                       std::abs(km(3.0)) + std::abs(km(4.0)) + std::abs(static_cast<double>(km.size()) - 2.0);
    out.push_back(detail::make(8, "Kaplan-Meier hand example (1 obs, 2 cens, 3 obs)", err, 1e-15, opt));
  }
  return out;
}

// 9. Defective distributions.
inline std::vector<CheckResult> check_defective(const Fixture& fx, const Options& opt) {
  std::vector<CheckResult> out;
  const auto& g = fx.draws.early;
  const auto flag = [](bool bad) { return bad ? 1.0 : 0.0; };
  {
    const HazardModel m = DfrModel(0.0, g);
    double oracle = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) oracle += g.weights()[k] * g.thetas()[k];
    const double lim = cum_hazard_limit(m);
    const double err = detail::rel_err(lim, oracle) + flag(!invert_cum_hazard(m, oracle * (1 + 1e-9)).is_infinite()) +
                       flag(!invert_cum_hazard(m, oracle * (1 - 1e-9)).is_finite());
    out.push_back(detail::make(9, "DFR lambda0=0: Lambda(inf)=sum w theta, INFINITE above", err, 1e-12, opt));

    const double tau = 1e3;
    RandomStream s = fx.stream(9);
    const Dataset data = simulate_dataset(m, 4000, tau, s);
    const double n = static_cast<double>(data.size());
    const double frac = static_cast<double>(data.censored_count()) / n;
    const double p = std::exp(-oracle);
    bool bad_record = false;
    for (const auto& r : data.records) bad_record |= (!r.observed && r.time != tau);
    bool threw = false;
    try {
      RandomStream s2 = fx.stream(10);
      simulate_dataset(m, 10, std::nullopt, s2);
    } catch (const ConfigError&) {
      threw = true;
    }
    const double z = std::abs(frac - p) / std::sqrt(p * (1 - p) / n);
    const double sim_err = z + 100.0 * (flag(bad_record) + flag(!threw) + flag(data.censored_count() == 0));
    out.push_back(detail::make(9, "simulate censors never-failing draws at tau (z-score)", sim_err, 4.0, opt));
  }
  {
    // lambda0 = 1, w0 = -3, one atom (theta=1, w=1):
    // Lambda(inf) = (1 - e^-3)/3 + e^-3/2.
    const HazardModel m = LcvModel(1.0, -3.0, GammaProcessDraw::from_atoms({1.0}, {1.0}));
    const double oracle = (1.0 - std::exp(-3.0)) / 3.0 + std::exp(-3.0) / 2.0;
    const double err = detail::rel_err(cum_hazard_limit(m), oracle) +
                       flag(!invert_cum_hazard(m, oracle * (1 + 1e-9)).is_infinite()) +
                       flag(!invert_cum_hazard(m, oracle * (1 - 1e-9)).is_finite());
    out.push_back(detail::make(9, "LCV w0+gamma<0: closed-form Lambda(inf), INFINITE above", err, 1e-12, opt));
  }
  {
    const double w0 = -(g.gamma() + 0.5);
    const HazardModel m = LcvModel(demo::kLcvBaseline, w0, g);
    const auto bps = breakpoints(m);
    const double far = bps.back() + 100.0;
    const double q = integrate_piecewise([&m](double u) { return hazard(m, u); }, 0.0, far, bps);
    const double err = detail::rel_err(cum_hazard_limit(m), q) + flag(!invert_cum_hazard(m, q * 1.000001).is_infinite());
    out.push_back(detail::make(9, "LCV demo draw with w0=-(gamma+0.5): Lambda(inf) vs quadrature", err, 1e-8, opt));
  }
  {
    const double lambda0 = 2.0, w0 = -1.0;
    const HazardModel m = LcvModel(lambda0, w0, GammaProcessDraw::from_atoms({}, {}));
    double worst = 0.0;
    for (int i = 1; i <= 10; ++i) {
      const double t = 0.7 * i;
      worst = std::max(worst, detail::rel_err(cum_hazard(m, t), lambda0 * (std::exp(w0 * t) - 1.0) / w0));
    }
    worst += flag(!invert_cum_hazard(m, 3.0).is_infinite());
    out.push_back(detail::make(9, "LCV without atoms: Lambda = lambda0 (e^{w0 t}-1)/w0", worst, 1e-12, opt));
  }
  return out;
}

inline std::vector<CheckResult> run_all(const Options& opt) {
  const Fixture fx(opt.seed);
  std::vector<CheckResult> all;
  for (auto part : {check_round_trip(fx, opt), check_quadrature(fx, opt), check_sampling_fit(fx, opt),
                    check_truncation_mass(fx, opt), check_identities(fx, opt), check_shapes(fx, opt),
                    check_likelihood(fx, opt), check_kaplan_meier(fx, opt), check_defective(fx, opt)}) {
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

inline std::string format_line(const CheckResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "[%s] C%-2d %-64s measured=%-12.4g tol=%.3g", r.passed ? "PASS" : "FAIL",
                r.criterion, r.name.c_str(), r.measured, r.tolerance);
  return buf;
}

}  // namespace gapphaz::validation
