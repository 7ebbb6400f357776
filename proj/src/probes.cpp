#include "gim/analysis.hpp"

#include <numbers>
#include <vector>

namespace gim {

namespace {

enum class Measure { contractivity, displacement };

struct TrialOutcome {
  enum Status { ok, skipped, failed } status = ok;
  double ratio = 0.0;
};

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

TrialOutcome run_trial(const GimScheme& scheme, const ManifoldKind& kind, std::uint64_t seed, Measure measure) {
  Rng rng(seed);
  const CurveSequence curve = random_probe_curve(kind, rng);
  try {
    const auto r = measure == Measure::contractivity ? contractivity_ratio(scheme, curve)
                                                     : displacement_ratio(scheme, curve);
    if (!r) return {TrialOutcome::skipped, 0.0};
    return {TrialOutcome::ok, *r};
  } catch (const GeometryError&) {
    return {TrialOutcome::failed, 0.0};
  }
}

// Folds one outcome into the result; the first trial wins ties.
void accumulate(ProbeResult& r, const TrialOutcome& o, int trial, std::uint64_t seed) {
  switch (o.status) {
    case TrialOutcome::skipped: ++r.skipped; return;
    case TrialOutcome::failed: ++r.failed; return;
    case TrialOutcome::ok: break;
  }
  ++r.evaluated;
  if (r.worst_trial < 0 || o.ratio > r.max_ratio) {
    r.max_ratio = o.ratio;
    r.worst_trial = trial;
    r.worst_seed = seed;
  }
}

void attach_worst_case(ProbeResult& r, const ManifoldKind& kind) {
  if (r.worst_trial < 0) return;
  Rng rng(r.worst_seed);
  r.worst_case = random_probe_curve(kind, rng);
}

ProbeResult probe_parallel(const GimScheme& scheme, const ManifoldKind& kind, const ProbeOptions& options,
                           Measure measure) {
  const int trials = options.trials;
  if (trials < 1) throw ParameterOutOfRange("a probe needs at least one trial");
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < trials; ++i) {
    outcomes[static_cast<std::size_t>(i)] = run_trial(scheme, kind, trial_seed(options.seed, i), measure);
  }
  ProbeResult r;
  for (int i = 0; i < trials; ++i) accumulate(r, outcomes[static_cast<std::size_t>(i)], i, trial_seed(options.seed, i));
  attach_worst_case(r, kind);
  return r;
}

ProbeResult probe_serial(const GimScheme& scheme, const ManifoldKind& kind, const ProbeOptions& options,
                         Measure measure) {
  if (options.trials < 1) throw ParameterOutOfRange("a probe needs at least one trial");
  ProbeResult r;
  for (int i = 0; i < options.trials; ++i) {
    const std::uint64_t seed = trial_seed(options.seed, i);
    accumulate(r, run_trial(scheme, kind, seed, measure), i, seed);
  }
  attach_worst_case(r, kind);
  return r;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  return splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(trial));
}

CurveSequence random_probe_curve(const ManifoldKind& kind, Rng& rng) {
  std::uniform_int_distribution<int> length(8, 32);
  const int n = length(rng);
  CurveSequence curve{{}, Boundary::periodic};
  curve.points.reserve(static_cast<std::size_t>(n));
  const bool compact = kind.tag() == ManifoldTag::sphere || kind.tag() == ManifoldTag::rotations3d;
  if (!compact) {
    for (int i = 0; i < n; ++i) curve.points.push_back(random_point(kind, rng));
    return curve;
  }
  const ManifoldPoint center = random_point(kind, rng);
  std::uniform_real_distribution<double> radius(0.0, std::numbers::pi / 16.0);
  for (int i = 0; i < n; ++i) {
    const Tangent dir = random_unit_tangent(center, rng);
    curve.points.push_back(exp_map(center, radius(rng) * dir));
  }
  return curve;
}

ProbeResult contractivity_probe(const GimScheme& scheme, const ManifoldKind& kind, const ProbeOptions& options) {
  return probe_parallel(scheme, kind, options, Measure::contractivity);
}

ProbeResult displacement_probe(const GimScheme& scheme, const ManifoldKind& kind, const ProbeOptions& options) {
  return probe_parallel(scheme, kind, options, Measure::displacement);
}

namespace serial {

ProbeResult contractivity_probe(const GimScheme& scheme, const ManifoldKind& kind, const ProbeOptions& options) {
  return probe_serial(scheme, kind, options, Measure::contractivity);
}

ProbeResult displacement_probe(const GimScheme& scheme, const ManifoldKind& kind, const ProbeOptions& options) {
  return probe_serial(scheme, kind, options, Measure::displacement);
}

}  // namespace serial

}  // namespace gim
