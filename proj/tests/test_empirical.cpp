#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gapphaz/empirical.hpp"
#include "gapphaz/rng.hpp"

using namespace gapphaz;
using Catch::Matchers::WithinAbs;

namespace {
Dataset make(std::vector<Record> recs) { return Dataset{std::move(recs), std::nullopt}; }
}  // namespace

TEST_CASE("Kaplan-Meier without censoring is the empirical survival", "[km]") {
  const StepFunction s = kaplan_meier(make({{3.0, true}, {1.0, true}, {2.0, true}}));
  CHECK(s(0.5) == 1.0);
  CHECK_THAT(s(1.0), WithinAbs(2.0 / 3.0, 1e-15));
  CHECK_THAT(s(2.5), WithinAbs(1.0 / 3.0, 1e-15));
  CHECK_THAT(s(3.0), WithinAbs(0.0, 1e-15));
  CHECK(s.size() == 3);
}

TEST_CASE("Kaplan-Meier with censoring", "[km]") {
  // Times 1, 2+, 3, 4+, 5: steps 4/5 at 1, then (4/5)(2/3) at 3, then 0 at 5.
  const StepFunction s = kaplan_meier(make({{1.0, true}, {2.0, false}, {3.0, true}, {4.0, false}, {5.0, true}}));
  REQUIRE(s.size() == 3);
  CHECK_THAT(s(1.5), WithinAbs(0.8, 1e-15));
  CHECK_THAT(s(2.5), WithinAbs(0.8, 1e-15));
  CHECK_THAT(s(3.0), WithinAbs(0.8 * 2.0 / 3.0, 1e-15));
  CHECK_THAT(s(4.9), WithinAbs(0.8 * 2.0 / 3.0, 1e-15));
  CHECK_THAT(s(5.0), WithinAbs(0.0, 1e-15));
}

TEST_CASE("Kaplan-Meier with everything censored stays at one", "[km]") {
  const StepFunction s = kaplan_meier(make({{1.0, false}, {2.0, false}}));
  CHECK(s.size() == 0);
  for (double t : {0.0, 1.0, 10.0}) CHECK(s(t) == 1.0);
}

TEST_CASE("Kaplan-Meier ties", "[km]") {
  // Two deaths and one censoring at t = 2 among four at risk: deaths first.
  const StepFunction s = kaplan_meier(make({{2.0, true}, {2.0, true}, {2.0, false}, {3.0, true}}));
  REQUIRE(s.size() == 2);
  CHECK_THAT(s(2.0), WithinAbs(0.5, 1e-15));
  CHECK_THAT(s(3.0), WithinAbs(0.0, 1e-15));
  CHECK_THROWS_AS(kaplan_meier(Dataset{}), std::domain_error);
}

TEST_CASE("step functions are right-continuous", "[km]") {
  const StepFunction f(1.0, {1.0, 2.0}, {0.5, 0.25});
  CHECK(f(std::nextafter(1.0, 0.0)) == 1.0);
  CHECK(f(1.0) == 0.5);
  CHECK(f(std::nextafter(2.0, 0.0)) == 0.5);
  CHECK(f(2.0) == 0.25);
  CHECK_THROWS_AS(StepFunction(1.0, {2.0, 1.0}, {0.5, 0.2}), std::domain_error);
  CHECK_THROWS_AS(StepFunction(1.0, {1.0}, {}), std::domain_error);
}

TEST_CASE("KS distance", "[ks]") {
  const auto uniform_cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
  // Mid-quantile samples (i - 1/2)/n sit exactly half a step from both sides.
  const int n = 8;
  std::vector<double> mids;
  for (int i = 1; i <= n; ++i) mids.push_back((i - 0.5) / n);
  CHECK_THAT(ks_distance(mids, uniform_cdf), WithinAbs(0.5 / n, 1e-15));

  const std::vector<double> one{0.5};
  CHECK_THAT(ks_distance(one, uniform_cdf), WithinAbs(0.5, 1e-15));

  RandomStream s = new_stream(77);
  std::vector<double> u(20000);
  for (auto& x : u) x = sample_uniform(s);
  const double d = ks_distance(u, uniform_cdf);
  CHECK(d < 0.02);

  // Invariant under a common monotone transform of samples and CDF.
  std::vector<double> e(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) e[i] = -std::log1p(-u[i]);
  CHECK_THAT(ks_distance(e, [](double x) { return -std::expm1(-x); }), WithinAbs(d, 1e-12));

  CHECK_THROWS_AS(ks_distance(std::vector<double>{}, uniform_cdf), std::domain_error);
}

TEST_CASE("histograms", "[histogram]") {
  const std::vector<double> x{0.5, 1.5};
  const auto h = histogram(x, BinWidth{1.0});
  REQUIRE(h.size() == 2);
  CHECK(h[0].lower == 0.0);
  CHECK(h[0].upper == 1.0);
  CHECK(h[0].count == 1);
  CHECK(h[1].count == 1);

  RandomStream s = new_stream(78);
  std::vector<double> y(1000);
  for (auto& v : y) v = sample_exponential(s, 1.0);
  for (const BinSpec spec : {BinSpec{BinCount{17}}, BinSpec{BinWidth{0.3}}}) {
    const auto bins = histogram(y, spec);
    std::size_t total = 0;
    for (const auto& b : bins) total += b.count;
    CHECK(total == y.size());
  }
  CHECK(histogram(y, BinCount{17}).size() == 17);

  CHECK_THROWS_AS(histogram(std::vector<double>{}, BinCount{3}), std::domain_error);
  CHECK_THROWS_AS(histogram(x, BinCount{0}), std::domain_error);
  CHECK_THROWS_AS(histogram(x, BinWidth{0.0}), std::domain_error);
  CHECK_THROWS_AS(histogram(std::vector<double>{-1.0}, BinWidth{1.0}), std::domain_error);
}
