// Anatomy of one Gamma Process prior draw: total mass, the largest atoms,
// and how quickly the stick-breaking weights use up the mass.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "gapphaz/gamma_process.hpp"
#include "gapphaz/rng.hpp"

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 7;
  const gapphaz::GaPPParams prior{3.0, 1.0, 100, gapphaz::ExponentialBase{1.0}};
  gapphaz::RandomStream stream = gapphaz::new_stream(seed);
  const gapphaz::GammaProcessDraw g = gapphaz::draw_gapp(prior, stream);

  std::printf("GaPP(alpha=3 Exp(1), beta=1), K=%zu, seed=%llu\n", g.size(),
              static_cast<unsigned long long>(seed));
  std::printf("total mass gamma = %.6f\n\n", g.gamma());

  std::vector<std::size_t> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return g.weights()[a] > g.weights()[b]; });
  std::printf("five heaviest atoms\n  %-6s %-10s %-10s\n", "k", "theta", "weight");
  for (std::size_t i = 0; i < 5 && i < order.size(); ++i) {
    const std::size_t k = order[i];
    std::printf("  %-6zu %-10.4f %-10.4f\n", k + 1, g.thetas()[k], g.weights()[k]);
  }

  std::printf("\nunscaled mass left after the first k atoms\n  %-4s %-14s %-14s\n", "k", "this draw", "prior mean");
  for (std::size_t k : {1, 2, 4, 10, 20, 40}) {
    std::printf("  %-4zu %-14.6g %-14.6g\n", k, gapphaz::tail_mass(g, k), gapphaz::expected_tail_mass(prior.alpha, k));
  }

  const auto view = gapphaz::ordered_view(g);
  std::printf("\nmeasure below t:  ");
  for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) std::printf("G[0,%.2f)=%.4f  ", t, gapphaz::integral_below(g, t));
  std::printf("\nlargest atom location: %.4f\n", view.theta(view.size()));
  return 0;
}
