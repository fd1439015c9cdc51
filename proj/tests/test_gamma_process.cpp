#include <catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gapphaz/gamma_process.hpp"
#include "gapphaz/quadrature.hpp"
#include "gapphaz/rng.hpp"

using namespace gapphaz;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

GammaProcessDraw demo_draw(std::uint64_t seed) {
  RandomStream s = new_stream(seed);
  return draw_gapp(GaPPParams{}, s);
}

double sum(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

TEST_CASE("stick-breaking weights", "[gapp]") {
  const std::vector<double> a{0.5, 0.5};
  const auto wa = stick_weights(a, 3);
  CHECK(wa == std::vector<double>{0.5, 0.25, 0.25});

  CHECK(stick_weights({}, 1) == std::vector<double>{1.0});

  const std::vector<double> b{0.2, 0.5, 0.5};
  const auto wb = stick_weights(b, 4);
  REQUIRE(wb.size() == 4);
  CHECK_THAT(wb[0], WithinAbs(0.2, 1e-15));
  CHECK_THAT(wb[1], WithinAbs(0.4, 1e-15));
  CHECK_THAT(wb[2], WithinAbs(0.2, 1e-15));
  CHECK_THAT(wb[3], WithinAbs(0.2, 1e-15));

  CHECK_THROWS_AS(stick_weights(b, 3), std::domain_error);
  const std::vector<double> bad{1.0};
  CHECK_THROWS_AS(stick_weights(bad, 2), std::domain_error);
}

TEST_CASE("a default draw has K atoms whose weights add up to gamma", "[gapp]") {
  const GammaProcessDraw g = demo_draw(5);
  REQUIRE(g.size() == 100);
  CHECK(g.sticks().size() == 99);
  CHECK_THAT(sum(g.unscaled_weights()), WithinAbs(1.0, 1e-12));
  CHECK_THAT(sum(g.weights()), WithinRel(g.gamma(), 1e-12));
  for (double th : g.thetas()) CHECK(th >= 0.0);
}

TEST_CASE("a single-atom draw carries all the mass", "[gapp]") {
  RandomStream s = new_stream(9);
  const GammaProcessDraw g = draw_gapp(GaPPParams{3.0, 1.0, 1, ExponentialBase{1.0}}, s);
  REQUIRE(g.size() == 1);
  CHECK(g.unscaled_weights()[0] == 1.0);
  CHECK(g.weights()[0] == g.gamma());
}

TEST_CASE("the prior draw order is atoms, sticks, then gamma", "[gapp]") {
  const GaPPParams p{2.0, 1.5, 5, ExponentialBase{2.0}};
  RandomStream s = new_stream(77);
  const GammaProcessDraw g = draw_gapp(p, s);

  RandomStream r = new_stream(77);
  std::vector<double> thetas(5), sticks(4);
  for (auto& t : thetas) t = sample_exponential(r, 2.0);
  for (auto& v : sticks) v = sample_beta(r, 1.0, 2.0);
  const double gamma = sample_gamma(r, 2.0, 1.5);
  CHECK(std::vector<double>(g.thetas().begin(), g.thetas().end()) == thetas);
  CHECK(std::vector<double>(g.sticks().begin(), g.sticks().end()) == sticks);
  CHECK(g.gamma() == gamma);
}

TEST_CASE("first four atoms carry 1-(3/4)^4 of the mass on average", "[gapp]") {
  RandomStream s = new_stream(2024);
  double total = 0.0;
  for (int r = 0; r < 1000; ++r) {
    const GammaProcessDraw g = draw_gapp(GaPPParams{}, s);
    total += 1.0 - tail_mass(g, 4);
  }
  CHECK_THAT(total / 1000.0, WithinAbs(1.0 - std::pow(0.75, 4), 0.02));
}

TEST_CASE("the normal base measure never produces negative atoms", "[gapp]") {
  RandomStream s = new_stream(3);
  const GammaProcessDraw g = draw_gapp(GaPPParams{3.0, 1.0, 500, NormalBase{0.2, 1.0}}, s);
  for (double th : g.thetas()) REQUIRE(th >= 0.0);
}

TEST_CASE("invalid prior settings are rejected", "[gapp]") {
  RandomStream s = new_stream(1);
  CHECK_THROWS_AS(draw_gapp(GaPPParams{0.0, 1.0, 10, ExponentialBase{1.0}}, s), std::domain_error);
  CHECK_THROWS_AS(draw_gapp(GaPPParams{1.0, -1.0, 10, ExponentialBase{1.0}}, s), std::domain_error);
  CHECK_THROWS_AS(draw_gapp(GaPPParams{1.0, 1.0, 0, ExponentialBase{1.0}}, s), std::domain_error);
  CHECK_THROWS_AS(draw_gapp(GaPPParams{1.0, 1.0, 10, ExponentialBase{0.0}}, s), std::domain_error);
  CHECK_THROWS_AS(draw_gapp(GaPPParams{1.0, 1.0, 10, NormalBase{0.0, 0.0}}, s), std::domain_error);
}

TEST_CASE("measure integrals on a single atom", "[gapp]") {
  const auto g = GammaProcessDraw::from_atoms({1.0}, {2.0});
  CHECK(integral_below(g, 0.0) == 0.0);
  CHECK(integral_below(g, 2.0) == 2.0);
  CHECK(integral_below(g, 50.0) == g.gamma());
  CHECK(integral_above(g, 0.0) == g.gamma());
  CHECK(integral_above(g, 2.0) == 0.0);
  CHECK(double_integral_below(g, 0.0) == 0.0);
  CHECK(double_integral_below(g, 3.0) == 4.0);
  CHECK(double_integral_above(g, 0.0) == 0.0);
  CHECK(double_integral_above(g, 3.0) == 2.0);
  // Strict indicators: an atom exactly at t counts on neither side.
  CHECK(integral_below(g, 1.0) == 0.0);
  CHECK(integral_above(g, 1.0) == 0.0);
  CHECK_THROWS_AS(integral_below(g, -1.0), std::domain_error);
}

TEST_CASE("below and above integrals partition the mass", "[gapp]") {
  const GammaProcessDraw g = demo_draw(17);
  RandomStream s = new_stream(18);
  for (int i = 0; i < 200; ++i) {
    const double t = 4.0 * sample_uniform(s);
    CHECK_THAT(integral_below(g, t) + integral_above(g, t), WithinRel(g.gamma(), 1e-12));
  }
}

TEST_CASE("double integrals agree with quadrature of the single integrals", "[gapp]") {
  const GammaProcessDraw g = demo_draw(19);
  const std::vector<double> bps(g.thetas().begin(), g.thetas().end());
  for (double t : {0.3, 1.0, 2.5, 6.0}) {
    const double below = integrate_piecewise([&](double u) { return integral_below(g, u); }, 0.0, t, bps);
    const double above = integrate_piecewise([&](double u) { return integral_above(g, u); }, 0.0, t, bps);
    CHECK_THAT(double_integral_below(g, t), WithinRel(below, 1e-8));
    CHECK_THAT(double_integral_above(g, t), WithinRel(above, 1e-8));
  }
}

TEST_CASE("ordered view sorts atoms and accumulates prefix sums", "[gapp]") {
  const auto g = GammaProcessDraw::from_atoms({2.0, 1.0}, {1.0, 3.0});
  const OrderedAtoms v = ordered_view(g);
  REQUIRE(v.size() == 2);
  CHECK(v.theta(0) == 0.0);
  CHECK(v.theta(1) == 1.0);
  CHECK(v.theta(2) == 2.0);
  CHECK(v.cum_weight(1) == 3.0);
  CHECK(v.cum_weight(2) == 4.0);
  CHECK(v.cum_moment(1) == 3.0);
  CHECK(v.cum_moment(2) == 5.0);
  CHECK(v.tail_weight(0) == 4.0);
  CHECK(v.tail_weight(1) == 1.0);
  CHECK(v.tail_weight(2) == 0.0);

  const auto one = GammaProcessDraw::from_atoms({0.7}, {1.5});
  const OrderedAtoms w = ordered_view(one);
  CHECK(w.theta(1) == 0.7);
  CHECK(w.weight(1) == 1.5);

  const GammaProcessDraw d = demo_draw(23);
  const OrderedAtoms dv = ordered_view(d);
  CHECK_THAT(dv.cum_weight(dv.size()), WithinRel(d.gamma(), 1e-12));
  for (std::size_t l = 1; l <= dv.size(); ++l) CHECK(dv.theta(l) >= dv.theta(l - 1));
}

TEST_CASE("ties keep draw order in the ordered view", "[gapp]") {
  const auto g = GammaProcessDraw::from_atoms({1.0, 1.0, 0.5}, {0.1, 0.2, 0.3});
  const OrderedAtoms v = ordered_view(g);
  CHECK(v.weight(1) == 0.3);
  CHECK(v.weight(2) == 0.1);
  CHECK(v.weight(3) == 0.2);
}

TEST_CASE("expected tail mass", "[gapp]") {
  CHECK(expected_tail_mass(3.0, 0) == 1.0);
  CHECK(expected_tail_mass(3.0, 4) == 0.31640625);
  CHECK_THAT(expected_tail_mass(3.0, 40), WithinRel(1.00565851616375e-5, 1e-12));
  CHECK_THROWS_AS(expected_tail_mass(0.0, 1), std::domain_error);
}

TEST_CASE("hand-built measures round-trip their weights", "[gapp]") {
  const auto g = GammaProcessDraw::from_atoms({0.5, 1.5, 3.0}, {1.0, 2.0, 1.0});
  CHECK(g.gamma() == 4.0);
  REQUIRE(g.sticks().size() == 2);
  const auto rebuilt = GammaProcessDraw::from_sticks(g.gamma(), {0.5, 1.5, 3.0},
                                                     std::vector<double>(g.sticks().begin(), g.sticks().end()));
  for (std::size_t k = 0; k < 3; ++k) CHECK_THAT(rebuilt.weights()[k], WithinRel(g.weights()[k], 1e-14));

  const auto zero = GammaProcessDraw::from_atoms({}, {});
  CHECK(zero.gamma() == 0.0);
  CHECK(zero.empty());
  CHECK_THROWS_AS(GammaProcessDraw::from_atoms({1.0}, {-1.0}), std::domain_error);
  CHECK_THROWS_AS(GammaProcessDraw::from_atoms({-1.0}, {1.0}), std::domain_error);
}
