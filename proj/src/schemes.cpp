#include "gim/schemes.hpp"

#include "gim/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gim {

namespace {

constexpr double kMaskSumTolerance = 1e-12;

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool is_even(long i) { return (i % 2 + 2) % 2 == 0; }

double phase_sum(const Mask& mask, bool even) {
  double s = 0.0;
  for (int i = mask.first_index(); i <= mask.last_index(); ++i)
    if (is_even(i) == even) s += mask.at(i);
  return s;
}

// Rule for output entries of one parity: S(f)_{2j+parity} = sum_k a_{2k+parity} f_{j-k}.
GimRule phase_rule(const Mask& mask, int parity) {
  std::vector<std::pair<int, double>> taps;
  for (int i = mask.first_index(); i <= mask.last_index(); ++i) {
    if (is_even(i) != (parity == 0)) continue;
    const double w = mask.at(i);
    if (w == 0.0) continue;
    const long k = floor_div(i - parity, 2);
    taps.emplace_back(static_cast<int>(-k), w);
  }
  std::sort(taps.begin(), taps.end());

  const std::size_t n = taps.size();
  bool symmetric = true;
  for (std::size_t j = 0; j < n / 2 && symmetric; ++j) {
    const auto& a = taps[j];
    const auto& b = taps[n - 1 - j];
    symmetric = std::abs(a.second - b.second) <= kSymmetryTolerance &&
                a.first + b.first == taps.front().first + taps.back().first;
  }
  if (!symmetric) {
    std::stable_sort(taps.begin(), taps.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
  }

  GimRule rule;
  rule.symmetric = symmetric;
  for (const auto& [off, w] : taps) {
    rule.point_offsets.push_back(off);
    rule.weights.push_back(w);
  }
  return rule;
}

Mask binomial_mask(int degree) {
  Mask mask;
  const double scale = std::ldexp(1.0, -degree);
  double c = 1.0;
  for (int k = 0; k <= degree + 1; ++k) {
    mask.coefficients.push_back(c * scale);
    c = c * (degree + 1 - k) / (k + 1);
  }
  mask.offset = -(degree + 2) / 2;
  return mask;
}

}  // namespace

double Mask::at(int index) const {
  if (index < first_index() || index > last_index()) return 0.0;
  return coefficients[static_cast<std::size_t>(index - offset)];
}

void validate_mask(const Mask& mask) {
  if (mask.coefficients.empty()) throw MaskRowSumViolation("mask is empty");
  for (double a : mask.coefficients) {
    if (!std::isfinite(a)) throw MaskRowSumViolation("mask coefficients must be finite");
  }
  const double even = phase_sum(mask, true);
  const double odd = phase_sum(mask, false);
  if (std::abs(even - 1.0) > kMaskSumTolerance || std::abs(odd - 1.0) > kMaskSumTolerance) {
    throw MaskRowSumViolation("mask phase sums are " + std::to_string(even) + " (even) and " +
                              std::to_string(odd) + " (odd); both must be 1");
  }
}

int GimRule::min_offset() const { return *std::min_element(point_offsets.begin(), point_offsets.end()); }
int GimRule::max_offset() const { return *std::max_element(point_offsets.begin(), point_offsets.end()); }

bool GimRule::is_identity() const {
  return point_offsets.size() == 1 && point_offsets[0] == 0 &&
         std::abs(weights[0] - 1.0) <= kSymmetryTolerance;
}

ManifoldPoint evaluate_rule(const GimRule& rule, std::span<const ManifoldPoint> stencil) {
  if (stencil.size() == 1) return stencil.front();
  return rule.symmetric ? symmetric_mean(stencil, rule.weights) : inductive_mean(stencil, rule.weights);
}

double GimScheme::displacement_bound() const {
  if (interpolatory) return 0.0;
  return displacement_constant(even_rule.weights, even_rule.symmetric);
}

GimScheme adapt(const Mask& mask, std::string name) {
  validate_mask(mask);
  GimScheme scheme;
  scheme.name = std::move(name);
  scheme.mask = mask;
  scheme.even_rule = phase_rule(mask, 0);
  scheme.odd_rule = phase_rule(mask, 1);
  scheme.interpolatory = scheme.even_rule.is_identity();
  return scheme;
}

GimScheme builtin(std::string_view name, const SchemeParams& params) {
  if (name == "fourpoint") {
    const double w = params.omega;
    if (!(w >= 0.0 && w < 0.125)) {
      throw OmegaOutOfRange("fourpoint requires 0 <= omega < 1/8, got " + std::to_string(w));
    }
    GimScheme s = adapt(Mask{{-w, 0.0, 0.5 + w, 1.0, 0.5 + w, 0.0, -w}, -3}, "fourpoint");
    s.mu = 4.0 * w + 0.5;
    return s;
  }
  if (name == "sixpoint_dd") {
    std::vector<double> c{3, 0, -25, 0, 150, 256, 150, 0, -25, 0, 3};
    for (double& x : c) x /= 256.0;
    GimScheme s = adapt(Mask{c, -5}, "sixpoint_dd");
    s.mu = 0.9844;
    return s;
  }
  if (name.size() == 8 && name.substr(0, 7) == "bspline" && name[7] >= '1' && name[7] <= '4') {
    const int m = name[7] - '0';
    GimScheme s = adapt(binomial_mask(m), std::string(name));
    s.mu = m == 4 ? 5.0 / 6.0 : 0.5;
    return s;
  }
  throw UnknownScheme("unknown scheme '" + std::string(name) + "'");
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries{
      {"fourpoint", "interpolatory 4-point scheme, weights (-w, 1/2+w, 1/2+w, -w); mu = 4w + 1/2, 0 <= w < 1/8"},
      {"sixpoint_dd", "interpolatory 6-point Dubuc-Deslauriers, weights (3,-25,150,150,-25,3)/256; mu = 0.9844"},
      {"bspline1", "piecewise geodesic (midpoint insertion); mu = 1/2"},
      {"bspline2", "corner cutting M_{1/4}, M_{3/4}; mu = 1/2"},
      {"bspline3", "cubic B-spline, symmetric mean of (1/8, 3/4, 1/8); mu = 1/2"},
      {"bspline4", "quartic B-spline, inductive means with weights (10, 5, 1)/16; mu = 5/6"},
  };
  return entries;
}

std::string_view boundary_name(Boundary b) { return b == Boundary::periodic ? "periodic" : "clamped"; }

Boundary parse_boundary(std::string_view s) {
  if (s == "periodic") return Boundary::periodic;
  if (s == "clamped") return Boundary::clamped;
  throw FormatError("boundary must be \"periodic\" or \"clamped\"");
}

long CurveSequence::resolve(long i) const {
  const long n = static_cast<long>(points.size());
  if (boundary == Boundary::periodic) return ((i % n) + n) % n;
  return std::clamp(i, 0L, n - 1);
}

void validate_curve(const CurveSequence& curve) {
  if (curve.points.size() < 2) throw CurveTooShort("a curve needs at least two points");
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    if (!(curve.points[i].kind() == curve.points[0].kind())) {
      throw KindMismatch("point " + std::to_string(i) + " lives on " +
                         curve.points[i].kind().to_string() + ", expected " +
                         curve.points[0].kind().to_string());
    }
  }
}

std::size_t refined_size(std::size_t n, Boundary boundary) {
  return boundary == Boundary::periodic ? 2 * n : 2 * n - 1;
}

}  // namespace gim
