#include <catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gapphaz/demo.hpp"
#include "gapphaz/empirical.hpp"
#include "gapphaz/hazard_models.hpp"
#include "gapphaz/quadrature.hpp"

using namespace gapphaz;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const GammaProcessDraw kTwoAtoms = GammaProcessDraw::from_atoms({1.0, 2.0}, {0.6, 0.4});
const GammaProcessDraw kUnitAtom = GammaProcessDraw::from_atoms({1.0}, {2.0});

double quad_cum_hazard(const HazardModel& m, double t) {
  return integrate_piecewise([&m](double u) { return hazard(m, u); }, 0.0, t, breakpoints(m));
}

}  // namespace

TEST_CASE("IFR hazard, cumulative hazard and survival on two atoms", "[models]") {
  const HazardModel m = IfrModel(0.5, kTwoAtoms);
  CHECK(hazard(m, 0.5) == 0.5);
  CHECK_THAT(hazard(m, 1.5), WithinAbs(1.1, 1e-15));
  CHECK_THAT(hazard(m, 3.0), WithinAbs(1.5, 1e-15));
  CHECK_THAT(cum_hazard(m, 3.0), WithinAbs(3.1, 1e-14));
  CHECK_THAT(survival(m, 3.0), WithinRel(std::exp(-3.1), 1e-14));
  CHECK(survival(m, 0.0) == 1.0);
  CHECK(cum_hazard_limit(m) == std::numeric_limits<double>::infinity());
  CHECK_FALSE(is_defective(m));
}

TEST_CASE("IFR inversion", "[models]") {
  const HazardModel m = IfrModel(1.0, kUnitAtom);
  CHECK_THAT(invert_cum_hazard(m, 4.0).time, WithinAbs(2.0, 1e-15));
  CHECK(invert_cum_hazard(m, 0.0).time == 0.0);
  CHECK(invert_cum_hazard(m, std::numeric_limits<double>::infinity()).is_infinite());
  CHECK_THROWS_AS(invert_cum_hazard(m, -1.0), std::domain_error);
}

TEST_CASE("DFR inversion on either side of the atom", "[models]") {
  const HazardModel m = DfrModel(1.0, kUnitAtom);
  CHECK_THAT(invert_cum_hazard(m, 1.5).time, WithinAbs(0.5, 1e-15));
  CHECK_THAT(invert_cum_hazard(m, 3.5).time, WithinAbs(1.5, 1e-15));
  CHECK_THAT(cum_hazard(m, 0.5), WithinAbs(1.5, 1e-15));
  CHECK_THAT(cum_hazard(m, 1.5), WithinAbs(3.5, 1e-15));
  CHECK(hazard(m, 0.5) == 3.0);
  CHECK(hazard(m, 1.5) == 1.0);
}

TEST_CASE("DFR without a baseline is defective", "[models]") {
  const HazardModel m = DfrModel(0.0, kTwoAtoms);
  const double limit = 0.6 * 1.0 + 0.4 * 2.0;
  CHECK_THAT(cum_hazard_limit(m), WithinRel(limit, 1e-15));
  CHECK(is_defective(m));
  CHECK(invert_cum_hazard(m, limit + 1e-9).is_infinite());
  CHECK(invert_cum_hazard(m, limit - 1e-9).is_finite());
  CHECK(hazard(m, 5.0) == 0.0);
}

TEST_CASE("LWB hazard is the reflected step function", "[models]") {
  const auto g = GammaProcessDraw::from_atoms({0.5, 1.5}, {1.0, 0.5});
  const HazardModel m = LwbModel(0.1, 2.0, g);
  CHECK_THAT(hazard(m, 1.8), WithinAbs(0.1, 1e-15));
  CHECK_THAT(hazard(m, 0.0), WithinAbs(1.6, 1e-15));
  CHECK_THAT(hazard(m, 3.0), WithinAbs(1.1, 1e-15));
  CHECK_THAT(cum_hazard(m, 3.0), WithinAbs(2.55, 1e-14));
  CHECK_THAT(quad_cum_hazard(m, 3.0), WithinAbs(2.55, 1e-9));
  CHECK(hazard(m, 2.0) == 0.1);
}

TEST_CASE("LCV on a single atom matches the closed-form segments", "[models]") {
  const HazardModel m = LcvModel(1.0, -1.0, kUnitAtom);
  CHECK_THAT(hazard(m, 0.5), WithinRel(0.6065306597126334, 1e-14));
  CHECK_THAT(hazard(m, 2.0), WithinRel(1.0, 1e-14));
  CHECK_THAT(cum_hazard(m, 1.0), WithinRel(0.6321205588285577, 1e-14));
  CHECK_THAT(cum_hazard(m, 2.0), WithinRel(1.2642411176571153, 1e-14));
  CHECK_THAT(quad_cum_hazard(m, 2.0), WithinRel(1.2642411176571153, 1e-9));
  const auto& lcv = std::get<LcvModel>(m);
  CHECK(lcv.segment_slope(0) == -1.0);
  CHECK(lcv.segment_slope(1) == 1.0);
}

TEST_CASE("LCV without atoms is a Gompertz-type law", "[models]") {
  const HazardModel m = LcvModel(2.0, -1.0, GammaProcessDraw::from_atoms({}, {}));
  CHECK_THAT(cum_hazard_limit(m), WithinRel(2.0, 1e-15));
  CHECK(invert_cum_hazard(m, 3.0).is_infinite());
  for (double t : {0.1, 1.0, 4.0}) CHECK_THAT(cum_hazard(m, t), WithinRel(2.0 * (1.0 - std::exp(-t)), 1e-14));

  const HazardModel flat = LcvModel(2.0, 0.0, GammaProcessDraw::from_atoms({}, {}));
  CHECK_THAT(cum_hazard(flat, 3.0), WithinRel(6.0, 1e-14));
  CHECK_THAT(invert_cum_hazard(flat, 3.0).time, WithinRel(1.5, 1e-14));

  const HazardModel rising = LcvModel(1.0, 0.5, GammaProcessDraw::from_atoms({}, {}));
  CHECK(cum_hazard_limit(rising) == std::numeric_limits<double>::infinity());
  CHECK_THAT(cum_hazard(rising, 2.0), WithinRel(2.0 * std::expm1(1.0), 1e-14));
}

TEST_CASE("LCV defective limit with one atom", "[models]") {
  const HazardModel m = LcvModel(1.0, -3.0, GammaProcessDraw::from_atoms({1.0}, {1.0}));
  CHECK_THAT(cum_hazard_limit(m), WithinRel(0.3416311780613107, 1e-14));
  CHECK_THROWS_AS(LcvModel(0.0, -1.0, kUnitAtom), std::domain_error);
}

TEST_CASE("SBT adds a decreasing and an increasing component", "[models]") {
  const auto early = GammaProcessDraw::from_atoms({0.5}, {2.0});
  const auto late = GammaProcessDraw::from_atoms({3.0}, {1.0});
  const HazardModel m = SbtModel(0.2, early, late);
  CHECK_THAT(hazard(m, 0.1), WithinAbs(2.2, 1e-15));
  CHECK_THAT(hazard(m, 1.0), WithinAbs(0.2, 1e-15));
  CHECK_THAT(hazard(m, 4.0), WithinAbs(1.2, 1e-15));
  // 0.2 t + 2 min(t, 0.5) + max(t - 3, 0)
  CHECK_THAT(cum_hazard(m, 4.0), WithinAbs(0.8 + 1.0 + 1.0, 1e-14));
  CHECK_THAT(invert_cum_hazard(m, 2.8).time, WithinRel(4.0, 1e-14));
}

TEST_CASE("MBT survival is the mixture of component survivals", "[models]") {
  const DfrModel early(0.3, kTwoAtoms);
  const IfrModel late(0.1, kUnitAtom);
  const HazardModel m = MbtModel(0.25, early, late);
  for (double t : {0.0, 0.4, 1.0, 2.5, 7.0}) {
    const double s1 = std::exp(-early.cum_hazard(t)), s2 = std::exp(-late.cum_hazard(t));
    CHECK_THAT(survival(m, t), WithinRel(0.25 * s1 + 0.75 * s2, 1e-14));
    CHECK_THAT(std::exp(-cum_hazard(m, t)), WithinRel(survival(m, t), 1e-13));
    CHECK_THAT(hazard(m, t) * survival(m, t), WithinRel(density(m, t), 1e-13));
  }
  for (double x : {0.01, 0.7, 3.0, 12.0}) {
    const SampleOutcome t = invert_cum_hazard(m, x);
    REQUIRE(t.is_finite());
    CHECK_THAT(cum_hazard(m, t.time), WithinRel(x, 1e-12));
  }
  CHECK_THROWS_AS(MbtModel(0.0, early, late), std::domain_error);
  CHECK_THROWS_AS(MbtModel(1.5, early, late), std::domain_error);
}

TEST_CASE("MBT with identical components equals the component", "[models]") {
  // With no atoms both components are the same exponential law.
  const auto empty = GammaProcessDraw::from_atoms({}, {});
  const HazardModel m = MbtModel(0.3, 0.7, empty, 0.7, empty);
  for (double t : {0.0, 0.2, 1.2, 3.0, 9.0}) {
    CHECK_THAT(survival(m, t), WithinRel(std::exp(-0.7 * t), 1e-14));
    CHECK_THAT(hazard(m, t), WithinRel(0.7, 1e-14));
  }
  // pi = 1 leaves only the early component.
  const DfrModel only(0.4, kTwoAtoms);
  const HazardModel pure = MbtModel(1.0, only, IfrModel(0.4, kTwoAtoms));
  for (double t : {0.2, 1.2, 3.0}) CHECK_THAT(survival(pure, t), WithinRel(std::exp(-only.cum_hazard(t)), 1e-14));
}

TEST_CASE("MBT with pi = 1 samples exactly like its early component", "[models]") {
  const DfrModel early(0.3, kTwoAtoms);
  const HazardModel mix = MbtModel(1.0, early, IfrModel(0.1, kUnitAtom));
  const HazardModel alone = early;
  RandomStream a = new_stream(5), b = new_stream(5);
  for (int i = 0; i < 1000; ++i) REQUIRE(sample_failure(mix, a).time == sample_failure(alone, b).time);
}

TEST_CASE("every model's cumulative hazard agrees with quadrature on the demo draws", "[models]") {
  const auto draws = demo::make_draws(99);
  for (ModelKind k : kAllModelKinds) {
    const HazardModel m = demo::make_model(k, draws);
    INFO(to_string(k));
    for (double t : {0.05, 0.6, 1.7, 3.3, 5.0}) CHECK_THAT(cum_hazard(m, t), WithinRel(quad_cum_hazard(m, t), 1e-8));
  }
}

TEST_CASE("sampling matches the analytic law", "[models]") {
  const auto draws = demo::make_draws(123);
  for (ModelKind k : kAllModelKinds) {
    const HazardModel m = demo::make_model(k, draws);
    RandomStream s = new_stream(321);
    std::vector<double> xs(10000);
    for (auto& x : xs) x = sample_failure(m, s).time;
    INFO(to_string(k));
    CHECK(ks_distance(xs, [&m](double t) { return std::isinf(t) ? 1.0 : 1.0 - survival(m, t); }) < 0.025);
  }
}

TEST_CASE("simulation censors at the horizon", "[models]") {
  const HazardModel m = IfrModel(0.5, kTwoAtoms);
  RandomStream s = new_stream(8);
  const Dataset early = simulate_dataset(m, 500, 1e-6, s);
  CHECK(early.censored_count() == 500);
  CHECK(early.observed_count() == 0);

  const Dataset none = simulate_dataset(m, 1000, std::nullopt, s);
  CHECK(none.observed_count() == 1000);
  CHECK_FALSE(none.tau.has_value());

  // Median: Lambda(t) = log 2.
  const double median = invert_cum_hazard(m, std::log(2.0)).time;
  const Dataset half = simulate_dataset(m, 10000, median, s);
  CHECK_THAT(half.censored_count() / 10000.0, WithinAbs(0.5, 0.015));
  for (const auto& r : half.records) {
    if (!r.observed) REQUIRE(r.time == median);
  }
}

TEST_CASE("a defective model needs a horizon", "[models]") {
  const HazardModel m = DfrModel(0.0, kTwoAtoms);
  RandomStream s = new_stream(4);
  CHECK_THROWS_AS(simulate_dataset(m, 10, std::nullopt, s), ConfigError);
  const Dataset d = simulate_dataset(m, 5000, 100.0, s);
  // P(T = inf) = exp(-1.4); draws beyond the last atom are all infinite.
  CHECK_THAT(d.censored_count() / 5000.0, WithinAbs(std::exp(-1.4), 0.03));
}

TEST_CASE("scalar parameters from their priors", "[models]") {
  const auto g2 = GammaProcessDraw::from_atoms({1.0}, {2.0});
  HyperParams hyper;
  hyper.nu = 4.0;
  RandomStream s = new_stream(66);
  double total = 0.0;
  const std::vector<GammaProcessDraw> one{g2};
  for (int i = 0; i < 100000; ++i) total += std::get<IfrModel>(draw_model_params(ModelKind::ifr, one, hyper, {}, s)).baseline();
  CHECK_THAT(total / 100000.0, WithinAbs(0.5, 0.01));

  const auto g3 = GammaProcessDraw::from_atoms({1.0}, {3.0});
  const std::vector<GammaProcessDraw> lcv{g3};
  hyper.nu = 3.0;
  double ss = 0.0, mean = 0.0;
  std::vector<double> w0s(100000);
  for (auto& w : w0s) w = std::get<LcvModel>(draw_model_params(ModelKind::lcv, lcv, hyper, {}, s)).initial_slope();
  for (double w : w0s) mean += w;
  mean /= w0s.size();
  for (double w : w0s) ss += (w - mean) * (w - mean);
  CHECK_THAT(std::sqrt(ss / (w0s.size() - 1)), WithinAbs(1.0, 0.02));

  const std::vector<GammaProcessDraw> two{g2, g3};
  CHECK_THROWS_AS(draw_model_params(ModelKind::mbt, two, hyper, {}, s), ConfigError);
  CHECK_THROWS_AS(draw_model_params(ModelKind::lwb, one, hyper, {}, s), ConfigError);
  CHECK_THROWS_AS(draw_model_params(ModelKind::sbt, one, hyper, {}, s), ConfigError);
  ModelInputs with_pi;
  with_pi.mixture_weight = 0.3;
  CHECK(std::get<MbtModel>(draw_model_params(ModelKind::mbt, two, hyper, with_pi, s)).mixture_weight() == 0.3);
  ModelInputs pi_prior;
  pi_prior.mixture_weight_prior = true;
  const double pi = std::get<MbtModel>(draw_model_params(ModelKind::mbt, two, hyper, pi_prior, s)).mixture_weight();
  CHECK((pi > 0.0 && pi < 1.0));
  hyper.nu = 0.0;
  CHECK_THROWS_AS(draw_model_params(ModelKind::ifr, one, hyper, {}, s), std::domain_error);
}

TEST_CASE("model names", "[models]") {
  for (ModelKind k : kAllModelKinds) CHECK(parse_model_kind(to_string(k)) == k);
  CHECK_THROWS_AS(parse_model_kind("weibull"), ConfigError);
  CHECK(draw_count(ModelKind::sbt) == 2);
  CHECK(draw_count(ModelKind::lcv) == 1);
}

TEST_CASE("negative times are rejected", "[models]") {
  const HazardModel m = IfrModel(0.5, kTwoAtoms);
  CHECK_THROWS_AS(hazard(m, -0.1), std::domain_error);
  CHECK_THROWS_AS(cum_hazard(m, -0.1), std::domain_error);
  CHECK_THROWS_AS(IfrModel(-1.0, kTwoAtoms), std::domain_error);
  CHECK_THROWS_AS(LwbModel(0.1, -1.0, kTwoAtoms), std::domain_error);
}
