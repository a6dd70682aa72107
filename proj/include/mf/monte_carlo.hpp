#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mf/moments.hpp"

namespace mf::mc {

using Engine = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20170915;
inline constexpr std::uint64_t kMinSamples = 1000;
/// Samples are processed in fixed chunks, each with its own stream, so the
/// result does not depend on how chunks are spread over threads.
inline constexpr std::uint64_t kChunkSize = 1u << 15;
/// Above this order the standard error of gamma-based moments grows so fast
/// that z-tests stop being informative.
inline constexpr int kMaxRecommendedMoment = 8;
inline constexpr double kZThreshold = 5.0;

/// Human-readable PRNG contract, recorded in reports.
std::string generator_description();

/// Seed of the stream for chunk `index`: SplitMix64 finalizer applied to
/// seed + (index + 1) * golden-ratio increment.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform on the open interval (0, 1), 53-bit resolution.
double uniform_open(Engine& rng);
double standard_normal(Engine& rng);
/// Inverse CDF of the unit exponential.
double exponential_from_uniform(double u);
/// Gamma(shape, scale 1). Marsaglia-Tsang squeeze for shape >= 1; for
/// shape < 1 draws G ~ gamma(shape + 1) and returns G * U^(1/shape).
double sample_gamma(double shape, Engine& rng);
double sample_atom(AtomKind kind, Engine& rng);

struct McResult {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  Rational exact;
  double z_score = 0.0;
  int n = 0;
  std::string expression;
  std::string generator;

  bool within_tolerance() const;
};

/// Monte Carlo estimate of E[e^n] with the exact moment as reference.
/// Deterministic in (e, n, samples, seed); `threads` (0 = auto) only changes speed.
/// Throws std::invalid_argument when samples < kMinSamples.
McResult mc_moment(const RVExpression& e, int n, std::uint64_t samples, std::uint64_t seed,
                   const MomentEngine& engine, unsigned threads = 1);

struct PanelEntry {
  std::string expression;
  int n;
};

/// Calibration panel of expressions drawn from the identities.
const std::vector<PanelEntry>& default_panel();

}  // namespace mf::mc
