#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gim/schemes.hpp"

namespace gim {

// sup_i d(p_i, p_{i+1}); periodic curves include the wrap-around pair.
double delta(const CurveSequence& curve);

// Parameter interval covered by a level-k sequence: [0, size/2^k) for periodic
// curves (one period) and [0, (size-1)/2^k] for clamped ones.
double parameter_span(const CurveSequence& curve, int level);

// Piecewise geodesic polygon PG_k: point p_n sits at t = n 2^-k and the
// segment between p_n and p_{n+1} is the geodesic M_{t 2^k - n}(p_n, p_{n+1}).
// Periodic curves wrap t; clamped curves throw ParameterOutOfRange outside
// their span.
ManifoldPoint pg_eval(const CurveSequence& curve, int level, double t);

// delta(T p) / delta(p); nullopt when delta(p) < 1e-12.
std::optional<double> contractivity_ratio(const GimScheme& scheme, const CurveSequence& curve);
// max_j d(T(p)_{2j}, p_j) / delta(p); nullopt when delta(p) < 1e-12.
std::optional<double> displacement_ratio(const GimScheme& scheme, const CurveSequence& curve);
// Same quantities for an already refined pair.
double max_displacement(const CurveSequence& coarse, const CurveSequence& fine);

// Random periodic probe curve of 8..32 points. Sphere and rotation curves are
// drawn inside a geodesic ball of radius pi/16 around a random center, so
// consecutive angles stay below pi/8 and extrapolated averages stay inside
// the unique-geodesic range.
CurveSequence random_probe_curve(const ManifoldKind& kind, Rng& rng);

// Seed of trial `trial` in a probe started with `seed`.
std::uint64_t trial_seed(std::uint64_t seed, int trial);

struct ProbeOptions {
  int trials = 200;
  std::uint64_t seed = 0;
};

struct ProbeResult {
  double max_ratio = 0.0;
  int worst_trial = -1;
  std::uint64_t worst_seed = 0;
  std::optional<CurveSequence> worst_case;
  int evaluated = 0;
  int skipped = 0;  // delta(p) below 1e-12
  int failed = 0;   // geometry errors
};

// Trials run concurrently (OpenMP); results equal the serial reference.
ProbeResult contractivity_probe(const GimScheme& scheme, const ManifoldKind& kind, const ProbeOptions& options = {});
ProbeResult displacement_probe(const GimScheme& scheme, const ManifoldKind& kind, const ProbeOptions& options = {});

namespace serial {
ProbeResult contractivity_probe(const GimScheme& scheme, const ManifoldKind& kind, const ProbeOptions& options = {});
ProbeResult displacement_probe(const GimScheme& scheme, const ManifoldKind& kind, const ProbeOptions& options = {});
}  // namespace serial

inline constexpr int kDefaultSampleCount = 257;

// Equispaced sample parameters over the span of `curve`: periodic curves use
// s * L / count, s < count; clamped ones include both ends.
std::vector<double> sample_parameters(const CurveSequence& curve, int count);

// Cauchy gap between consecutive piecewise geodesic polygons,
// max_t d(PG_k(coarse)(t), PG_{k+1}(fine)(t)).
double cauchy_gap(const CurveSequence& coarse, const CurveSequence& fine, int level, std::span<const double> ts);

struct ConvergenceResult {
  std::vector<double> gaps;      // g_0 .. g_{K-1}
  std::vector<double> envelope;  // C_tilde mu^k, empty when mu is unknown
  double displacement_bound = 0.0;
  double c_tilde = 0.0;
  std::optional<double> mu;
};

ConvergenceResult convergence_probe(const GimScheme& scheme, const CurveSequence& curve, int max_level,
                                    int sample_count = kDefaultSampleCount);

struct LevelRecord {
  int level = 0;
  double delta = 0.0;
  // Quantities of the step from this level to the next; NaN on the last level.
  double contractivity_ratio = 0.0;
  double max_displacement_ratio = 0.0;
  double cauchy_gap = 0.0;
};

struct DiagnosticsReport {
  std::vector<LevelRecord> levels;
  std::optional<double> mu;
  double displacement_bound = 0.0;  // C
  double c_tilde = 0.0;             // (1 + C + 2 mu) delta(p)
};

// Per-level diagnostics of a refinement chain as produced by refine_chain.
DiagnosticsReport diagnose(const GimScheme& scheme, std::span<const CurveSequence> chain,
                           int sample_count = kDefaultSampleCount);

}  // namespace gim
