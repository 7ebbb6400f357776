#include "gim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

namespace gim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kDeltaFloor = 1e-12;

}  // namespace

double delta(const CurveSequence& curve) {
  validate_curve(curve);
  const std::size_t n = curve.size();
  double d = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) d = std::max(d, distance(curve.points[i], curve.points[i + 1]));
  if (curve.boundary == Boundary::periodic) d = std::max(d, distance(curve.points[n - 1], curve.points[0]));
  return d;
}

double parameter_span(const CurveSequence& curve, int level) {
  const auto n = static_cast<double>(curve.size());
  return std::ldexp(curve.boundary == Boundary::periodic ? n : n - 1.0, -level);
}

ManifoldPoint pg_eval(const CurveSequence& curve, int level, double t) {
  validate_curve(curve);
  if (!std::isfinite(t)) throw ParameterOutOfRange("parameter must be finite");
  const long n = static_cast<long>(curve.size());
  if (curve.boundary == Boundary::periodic) {
    const double period = parameter_span(curve, level);
    double tm = std::fmod(t, period);
    if (tm < 0.0) tm += period;
    const double s = std::ldexp(tm, level);
    long i = static_cast<long>(std::floor(s));
    double frac = s - static_cast<double>(i);
    if (i >= n) {  // rounding at the top of the period
      i = 0;
      frac = 0.0;
    }
    return geodesic_point(curve.points[static_cast<std::size_t>(i)],
                          curve.points[static_cast<std::size_t>((i + 1) % n)], frac);
  }
  const double span = parameter_span(curve, level);
  if (t < 0.0 || t > span) {
    throw ParameterOutOfRange("t = " + std::to_string(t) + " outside [0, " + std::to_string(span) + "]");
  }
  const double s = std::ldexp(t, level);
  const long i = static_cast<long>(std::floor(s));
  if (i >= n - 1) return curve.points.back();
  return geodesic_point(curve.points[static_cast<std::size_t>(i)], curve.points[static_cast<std::size_t>(i + 1)],
                        s - static_cast<double>(i));
}

double max_displacement(const CurveSequence& coarse, const CurveSequence& fine) {
  double m = 0.0;
  for (std::size_t j = 0; j < coarse.size() && 2 * j < fine.size(); ++j) {
    m = std::max(m, distance(fine.points[2 * j], coarse.points[j]));
  }
  return m;
}

std::optional<double> contractivity_ratio(const GimScheme& scheme, const CurveSequence& curve) {
  const double d0 = delta(curve);
  if (d0 < kDeltaFloor) return std::nullopt;
  return delta(refine_once(scheme, curve)) / d0;
}

std::optional<double> displacement_ratio(const GimScheme& scheme, const CurveSequence& curve) {
  const double d0 = delta(curve);
  if (d0 < kDeltaFloor) return std::nullopt;
  return max_displacement(curve, refine_once(scheme, curve)) / d0;
}

std::vector<double> sample_parameters(const CurveSequence& curve, int count) {
  std::vector<double> ts;
  const double span = parameter_span(curve, 0);
  if (curve.boundary == Boundary::periodic) {
    if (count < 1) throw ParameterOutOfRange("sample count must be >= 1");
    for (int s = 0; s < count; ++s) ts.push_back(span * s / count);
  } else {
    if (count < 2) throw ParameterOutOfRange("clamped sampling needs at least 2 samples");
    for (int s = 0; s < count; ++s) ts.push_back(span * s / (count - 1));
  }
  return ts;
}

double cauchy_gap(const CurveSequence& coarse, const CurveSequence& fine, int level, std::span<const double> ts) {
  const long count = static_cast<long>(ts.size());
  std::vector<double> gaps(ts.size(), 0.0);
  std::vector<std::exception_ptr> errors(ts.size());
#pragma omp parallel for schedule(static)
  for (long s = 0; s < count; ++s) {
    try {
      const auto i = static_cast<std::size_t>(s);
      gaps[i] = distance(pg_eval(coarse, level, ts[i]), pg_eval(fine, level + 1, ts[i]));
    } catch (...) {
      errors[static_cast<std::size_t>(s)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return gaps.empty() ? 0.0 : *std::max_element(gaps.begin(), gaps.end());
}

ConvergenceResult convergence_probe(const GimScheme& scheme, const CurveSequence& curve, int max_level,
                                    int sample_count) {
  if (max_level < 2) throw ParameterOutOfRange("convergence probe needs at least 2 levels");
  const auto chain = refine_chain(scheme, curve, max_level);
  const auto ts = sample_parameters(curve, sample_count);

  ConvergenceResult r;
  r.mu = scheme.mu;
  r.displacement_bound = scheme.displacement_bound();
  for (int k = 0; k < max_level; ++k) {
    r.gaps.push_back(cauchy_gap(chain[static_cast<std::size_t>(k)], chain[static_cast<std::size_t>(k) + 1], k, ts));
  }
  if (r.mu) {
    r.c_tilde = (1.0 + r.displacement_bound + 2.0 * *r.mu) * delta(curve);
    for (int k = 0; k < max_level; ++k) r.envelope.push_back(r.c_tilde * std::pow(*r.mu, k));
  } else {
    r.c_tilde = kNaN;
  }
  return r;
}

DiagnosticsReport diagnose(const GimScheme& scheme, std::span<const CurveSequence> chain, int sample_count) {
  if (chain.empty()) throw ParameterOutOfRange("empty refinement chain");
  DiagnosticsReport report;
  report.mu = scheme.mu;
  report.displacement_bound = scheme.displacement_bound();
  const double d0 = delta(chain.front());
  report.c_tilde = scheme.mu ? (1.0 + report.displacement_bound + 2.0 * *scheme.mu) * d0 : kNaN;

  const auto ts = sample_parameters(chain.front(), sample_count);
  std::vector<double> deltas;
  for (const auto& c : chain) deltas.push_back(delta(c));

  for (std::size_t k = 0; k < chain.size(); ++k) {
    LevelRecord rec;
    rec.level = static_cast<int>(k);
    rec.delta = deltas[k];
    if (k + 1 < chain.size()) {
      const bool usable = deltas[k] >= kDeltaFloor;
      rec.contractivity_ratio = usable ? deltas[k + 1] / deltas[k] : kNaN;
      rec.max_displacement_ratio = usable ? max_displacement(chain[k], chain[k + 1]) / deltas[k] : kNaN;
      rec.cauchy_gap = cauchy_gap(chain[k], chain[k + 1], static_cast<int>(k), ts);
    } else {
      rec.contractivity_ratio = kNaN;
      rec.max_displacement_ratio = kNaN;
      rec.cauchy_gap = kNaN;
    }
    report.levels.push_back(rec);
  }
  return report;
}

}  // namespace gim
