#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>

#include "gapphaz/errors.hpp"

namespace gapphaz {

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) noexcept {
  std::uint64_t s = a ^ (b * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL);
  splitmix64(s);
  return splitmix64(s);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

/**
 * Seedable deterministic random stream (xoshiro256** seeded through
 * SplitMix64, period 2^256 - 1).
 *
 * Child streams are derived with split(id); the child depends only on the
 * parent's key and the id, never on how many variates the parent has
 * produced, so replicate streams can be created in any order.
 *
 * A stream is single-owner mutable state. Share work across threads by
 * splitting, not by sharing one stream.
 */
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), key_(seed) { reseed(); }

  std::uint64_t seed() const noexcept { return seed_; }

  RandomStream split(std::uint64_t id) const {
    RandomStream child(*this);
    child.key_ = detail::mix64(key_, id);
    child.reseed();
    return child;
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = detail::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = detail::rotl(s_[3], 45);
    return result;
  }

 private:
  void reseed() noexcept {
    std::uint64_t sm = key_;
    for (auto& word : s_) word = detail::splitmix64(sm);
  }

  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t s_[4]{};
};

inline RandomStream new_stream(std::uint64_t seed) { return RandomStream(seed); }

inline RandomStream split(const RandomStream& stream, std::uint64_t id) { return stream.split(id); }

/// Uniform on the open interval (0,1): the 53-bit lattice shifted by half a
/// step, so neither endpoint is reachable and -log(u) is always finite.
inline double sample_uniform(RandomStream& stream) noexcept {
  constexpr double step = 0x1.0p-53;
  return (static_cast<double>(stream.next_u64() >> 11) + 0.5) * step;
}

inline double sample_exponential(RandomStream& stream, double rate) {
  detail::require_domain(rate > 0.0 && std::isfinite(rate), "sample_exponential: rate must be > 0");
  return -std::log(sample_uniform(stream)) / rate;
}

inline double sample_normal(RandomStream& stream, double mean, double sd) {
  detail::require_domain(sd >= 0.0, "sample_normal: sd must be >= 0");
  if (sd == 0.0) return mean;
  // Marsaglia polar method; the second variate of the pair is discarded so
  // the stream carries no cached state.
  double u = 0.0, v = 0.0, s = 0.0;
  do {
    u = 2.0 * sample_uniform(stream) - 1.0;
    v = 2.0 * sample_uniform(stream) - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  return mean + sd * u * std::sqrt(-2.0 * std::log(s) / s);
}

inline double sample_gamma(RandomStream& stream, double shape, double rate) {
  detail::require_domain(shape > 0.0 && std::isfinite(shape), "sample_gamma: shape must be > 0");
  detail::require_domain(rate > 0.0 && std::isfinite(rate), "sample_gamma: rate must be > 0");
  if (shape < 1.0) {
    // Ga(a) = Ga(a+1) * U^(1/a); redraw on underflow so the result stays > 0.
    for (;;) {
      const double boosted = sample_gamma(stream, shape + 1.0, 1.0);
      const double x = boosted * std::exp(std::log(sample_uniform(stream)) / shape);
      if (x > 0.0) return x / rate;
    }
  }
  // Marsaglia & Tsang (2000).
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0, v = 0.0;
    do {
      x = sample_normal(stream, 0.0, 1.0);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = sample_uniform(stream);
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v / rate;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v / rate;
  }
}

inline double sample_beta(RandomStream& stream, double a, double b) {
  detail::require_domain(a > 0.0 && b > 0.0, "sample_beta: parameters must be > 0");
  for (;;) {
    const double x = sample_gamma(stream, a, 1.0);
    const double y = sample_gamma(stream, b, 1.0);
    const double r = x / (x + y);
    if (r > 0.0 && r < 1.0) return r;
  }
}

inline std::size_t sample_categorical(RandomStream& stream, std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) {
    detail::require_domain(w >= 0.0 && std::isfinite(w), "sample_categorical: weights must be finite and >= 0");
    total += w;
  }
  detail::require_domain(total > 0.0, "sample_categorical: at least one weight must be positive");
  const double target = sample_uniform(stream) * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last_positive = i;
    acc += weights[i];
    if (target < acc) return i;
  }
  return last_positive;
}

}  // namespace gapphaz
