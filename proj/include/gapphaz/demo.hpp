#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gapphaz/gamma_process.hpp"
#include "gapphaz/hazard_models.hpp"
#include "gapphaz/rng.hpp"

namespace gapphaz::demo {

// Stream ids split off the root stream. The CLI uses the same layout, so a
// seed names the same prior draw in every command and every model.
inline constexpr std::uint64_t kEarlyDrawStream = 0;
inline constexpr std::uint64_t kLateDrawStream = 1;
inline constexpr std::uint64_t kParamStream = 2;
inline constexpr std::uint64_t kSampleStream = 3;

// Seed used when none is given.
inline constexpr std::uint64_t kDefaultSeed = 20241016;

// Prior: alpha = 3, beta = 1, K = 100; H0 = Exp(1) for G (G1), Normal(2, 1)
// for the late-failure measure G2 of the two-measure models.
inline GaPPParams early_prior() { return GaPPParams{3.0, 1.0, 100, ExponentialBase{1.0}}; }
inline GaPPParams late_prior() { return GaPPParams{3.0, 1.0, 100, NormalBase{2.0, 1.0}}; }

// Scalar parameters used when nothing else is configured.
inline constexpr double kBaseline = 0.1;
inline constexpr double kSymmetryPoint = 0.6;
inline constexpr double kMixtureWeight = 0.5;
inline constexpr double kLcvBaseline = 1.0;
inline constexpr double kLcvInitialSlope = -1.0;
inline constexpr double kTimeHorizon = 5.0;

struct DemoDraws {
  GammaProcessDraw early;
  GammaProcessDraw late;
};

inline DemoDraws make_draws(std::uint64_t seed) {
  const RandomStream root = new_stream(seed);
  RandomStream s1 = root.split(kEarlyDrawStream);
  RandomStream s2 = root.split(kLateDrawStream);
  DemoDraws d;
  d.early = draw_gapp(early_prior(), s1);
  d.late = draw_gapp(late_prior(), s2);
  return d;
}

/// The single draw G serves IFR, DFR, LWB and LCV and is G1 for SBT/MBT.
inline HazardModel make_model(ModelKind kind, const DemoDraws& d) {
  switch (kind) {
    case ModelKind::ifr: return IfrModel(kBaseline, d.early);
    case ModelKind::dfr: return DfrModel(kBaseline, d.early);
    case ModelKind::lwb: return LwbModel(kBaseline, kSymmetryPoint, d.early);
    case ModelKind::sbt: return SbtModel(kBaseline, d.early, d.late);
    case ModelKind::mbt: return MbtModel(kMixtureWeight, kBaseline, d.early, kBaseline, d.late);
    case ModelKind::lcv: return LcvModel(kLcvBaseline, kLcvInitialSlope, d.early);
  }
  throw std::logic_error("make_model: unhandled model kind");
}

}  // namespace gapphaz::demo
