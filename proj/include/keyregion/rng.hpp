#pragma once

// Schedule-independent random streams. Every engine is keyed by
// (seed, stream, index) so a trial's draws never depend on which thread ran it
// or on what ran before it.
//
// std::mt19937_64 and std::seed_seq are fully specified by the standard; the
// standard distribution classes are not, so sampling is done by hand here.

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>

namespace keyregion {

enum class Stream : std::uint32_t { codebook = 1, trial = 2, noise = 3 };

using Engine = std::mt19937_64;

inline Engine stream_engine(std::uint64_t seed, Stream stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Engine(seq);
}

/// Uniform on [0, 1) with 53 random bits.
inline double unit_uniform(Engine& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

/// Uniform on {0, ..., n-1}. Multiply-shift; bias below 2^-64 * n.
inline std::size_t uniform_index(Engine& g, std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: empty range");
  return static_cast<std::size_t>((static_cast<unsigned __int128>(g()) * n) >> 64);
}

/// Inverse-CDF draw from a probability vector.
inline std::size_t sample_index(Engine& g, std::span<const double> probs) {
  const double u = unit_uniform(g);
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    acc += probs[i];
    last_positive = i;
    if (u < acc) return i;
  }
  return last_positive;  // rounding slack in the cumulative sum
}

}  // namespace keyregion
