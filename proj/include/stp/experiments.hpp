#pragma once

// Hit counting against the counting profile, tail-union measures of preimage
// balls, exponent regression, and brute-force cross-checks.

#include "stp/arc_union.hpp"
#include "stp/radius_sequences.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stp {

struct CountingProfile {
  /// psi(q) for ordinals q = 1..h (zero off the support).
  std::vector<SqrtRational> psi;
  MeasureSum total;
};

/// psi(q) = prod_j mu_j(B(x_j, r at ordinal q)) and Psi(h) = sum_{q <= h} psi(q).
CountingProfile counting_profile(std::span<const CircleMeasure> measures, const std::vector<Rational>& x,
                                 const RadiusSequence& r, std::uint64_t h);

struct HitCountResult {
  std::uint64_t h = 0;
  std::uint64_t count = 0;
  MeasureSum psi;
  double ratio = 0;
  /// Ordinals that hit, when logging was requested.
  std::vector<BigInt> hits;
};

struct HitOptions {
  bool log_hits = false;
  std::size_t output_bits = 64;
};

/// Counts ordinals q <= h with T^{g(q)}(alpha) in prod_j B(x_j, r_{g(q)}); Psi uses Lebesgue measure.
HitCountResult hit_count(const SystemSpec& s, const TorusPoint& alpha, const std::vector<Rational>& x,
                         const RadiusSequence& r, std::uint64_t h, const HitOptions& opts = {});

/// The same count by direct enumeration in exact arithmetic, through RadiusSequence::eval.
std::uint64_t naive_hit_count(const SystemSpec& s, const std::vector<Rational>& alpha, const std::vector<Rational>& x,
                              const RadiusSequence& r, std::uint64_t h);

struct SampleSpec {
  std::size_t count = 200;
  std::size_t bits = 128;
  std::uint64_t master_seed = 7;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
  /// Rational: the same dyadic draws, held as exact rationals.
  Backend backend = Backend::Fixed;
};

/// Per-sample seed, a pure function of (master seed, index).
std::uint64_t sample_seed(std::uint64_t master, std::uint64_t index);

/// Uniform point of T^dim with `bits` random bits per coordinate; coordinates
/// whose reduced denominator is below 2^64 are redrawn.
TorusPoint sample_point(const SampleSpec& spec, std::uint64_t index, std::size_t dim);

struct ExponentPoint {
  double h;
  double count;
  double psi;
};

struct ExponentFit {
  bool degenerate = true;
  std::string reason;
  double slope = 0;
  double intercept = 0;
  /// Root-mean-square residual of the log-log fit.
  double residual = 0;
  std::size_t sample_size = 0;
};

/// Least-squares slope of log|N - Psi| against log Psi over points with Psi > 1 and N != Psi.
ExponentFit error_exponent_fit(std::span<const ExponentPoint> data);

struct Quantiles {
  double mean = 0, stddev = 0, min = 0, q05 = 0, q25 = 0, median = 0, q75 = 0, q95 = 0, max = 0;
};
Quantiles summarize(std::vector<double> values);

struct TrialOptions {
  /// Horizons at which counts are recorded; h is always included.
  std::vector<std::uint64_t> checkpoints;
  /// Samples pooled per exponent fit.
  std::size_t batch_size = 20;
  std::size_t output_bits = 64;
  /// A sample "hits infinitely often" in the finite shadow when N(h) >= this.
  std::uint64_t repeat_threshold = 10;
};

struct CheckpointStats {
  std::uint64_t h = 0;
  MeasureSum psi;
  Quantiles ratio;
  /// (N - Psi) / sqrt(Psi)
  Quantiles normalized_error;
};

struct KgsTrialResult {
  SampleSpec samples;
  std::vector<std::uint64_t> seeds;
  std::vector<std::uint64_t> horizons;
  /// counts[i][c]: sample i at horizons[c].
  std::vector<std::vector<std::uint64_t>> counts;
  std::vector<CheckpointStats> stats;
  std::vector<ExponentFit> batch_fits;
  std::optional<double> median_exponent;
  /// Fraction of samples with N(h) >= repeat_threshold.
  double repeat_fraction = 0;
  /// Psi(h) < 5: statistics are reported but carry no verdict.
  bool underpowered = false;
};

/// Monte Carlo over uniformly sampled alpha. Deterministic for a fixed master seed.
KgsTrialResult kgs_trial(const SystemSpec& s, const std::vector<Rational>& x, const RadiusSequence& r,
                         std::uint64_t h, const SampleSpec& samples, const TrialOptions& opts = {});

enum class UnionRoute { Lebesgue, Cdf };
std::string to_string(UnionRoute r);

struct TailUnionProfile {
  std::size_t horizon = 0;
  /// u[l - 1] = U_l for l = 1..K.
  std::vector<Rational> u;
  Rational error_bound = 0;
  UnionRoute route = UnionRoute::Lebesgue;
  /// Sum over k <= K of the reference mass of B(x, r_{n_k}).
  MeasureSum ball_sum;
};

/// U_l = reference(union_{k=l}^{K} f^{-n_k} B(x, r_{n_k})) for every l, in one sweep.
TailUnionProfile tail_union_profile(const SystemSpec& s, const Rational& x, const RadiusSequence& r, std::size_t K,
                                    const CircleMeasure& reference, UnionRoute route);

struct TailUnionResult {
  std::size_t l = 0;
  std::size_t horizon = 0;
  Rational measure;
  Rational error_bound;
};

TailUnionResult tail_union_measure(const SystemSpec& s, const Rational& x, const RadiusSequence& r, std::size_t l,
                                   std::size_t K, const CircleMeasure& reference);

enum class OracleComponent { HitCount, UnionMeasure, TSequence, CountingProfile };
std::string to_string(OracleComponent c);

struct OracleReport {
  OracleComponent component;
  bool pass = false;
  std::string instance;
  std::string witness;
};

/// hit_count against naive_hit_count on the exact value of alpha (h <= 1000).
OracleReport oracle_hit_count(const SystemSpec& s, const TorusPoint& alpha, const std::vector<Rational>& x,
                              const RadiusSequence& r, std::uint64_t h);
/// union_measure against uniform point sampling, within 3 sigma.
OracleReport oracle_union_measure(std::span<const Arc> arcs, std::uint64_t points, std::uint64_t seed);
/// t_sequence bisection against a dense grid scan; agreement within 2 tol + grid step.
OracleReport oracle_t_sequence(const CircleMeasure& m, const Rational& x, std::uint64_t n, const Rational& grid_step,
                               const ProbeOptions& opts = {});
/// counting_profile against partial_measure_sum with s = 1, exactly.
OracleReport oracle_counting_profile(std::span<const CircleMeasure> measures, const std::vector<Rational>& x,
                                     const RadiusSequence& r, std::uint64_t h);

}  // namespace stp
