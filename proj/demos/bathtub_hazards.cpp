// The three bathtub constructions built from shared prior draws: a hazard
// table on a coarse grid plus the probability of surviving to a few times.

#include <cstdio>
#include <cstdlib>

#include "gapphaz/demo.hpp"
#include "gapphaz/hazard_models.hpp"

int main(int argc, char** argv) {
  using namespace gapphaz;
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : demo::kDefaultSeed;
  const demo::DemoDraws draws = demo::make_draws(seed);
  const ModelKind kinds[] = {ModelKind::lwb, ModelKind::sbt, ModelKind::mbt};

  std::printf("%-6s", "t");
  for (ModelKind k : kinds) std::printf("  %-12s", (std::string(to_string(k)) + " hazard").c_str());
  std::printf("\n");
  for (int i = 0; i <= 20; ++i) {
    const double t = 0.25 * i;
    std::printf("%-6.2f", t);
    for (ModelKind k : kinds) std::printf("  %-12.5f", hazard(demo::make_model(k, draws), t));
    std::printf("\n");
  }

  std::printf("\nsurvival\n");
  for (ModelKind k : kinds) {
    const HazardModel m = demo::make_model(k, draws);
    std::printf("  %-4s S(1)=%.4f  S(2)=%.4f  S(4)=%.4f\n", std::string(to_string(k)).c_str(), survival(m, 1.0),
                survival(m, 2.0), survival(m, 4.0));
  }
  return 0;
}
