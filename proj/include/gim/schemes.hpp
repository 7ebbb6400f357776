#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gim/geometry.hpp"

namespace gim {

// Finitely supported linear mask a_i, i = offset .. offset + size - 1. The
// linear scheme is S(f)_j = sum_i a_{j - 2i} f_i.
struct Mask {
  std::vector<double> coefficients;
  int offset = 0;

  double at(int index) const;
  int first_index() const { return offset; }
  int last_index() const { return offset + static_cast<int>(coefficients.size()) - 1; }
};

// Throws MaskRowSumViolation unless both phase sums equal one.
void validate_mask(const Mask& mask);

// One adapted refinement rule. Output entry 2j (or 2j+1) averages the points
// p_{j + point_offsets[k]} with weights[k]. Symmetric rules keep the natural
// (ascending offset) order and are evaluated with symmetric_mean; the others
// are sorted by non-increasing weight and use inductive_mean.
struct GimRule {
  std::vector<int> point_offsets;
  std::vector<double> weights;
  bool symmetric = false;

  int min_offset() const;
  int max_offset() const;
  bool is_identity() const;
};

ManifoldPoint evaluate_rule(const GimRule& rule, std::span<const ManifoldPoint> stencil);

struct GimScheme {
  std::string name;
  Mask mask;
  GimRule even_rule;
  GimRule odd_rule;
  std::optional<double> mu;  // proven contractivity factor, when known
  bool interpolatory = false;

  // Bound on d(T(p)_{2j}, p_j) / delta(p) for the even rule.
  double displacement_bound() const;
};

GimScheme adapt(const Mask& mask, std::string name = "custom");

struct SchemeParams {
  double omega = 1.0 / 16.0;  // fourpoint tension
};

// Built-in catalog: "fourpoint", "sixpoint_dd", "bspline1" .. "bspline4".
GimScheme builtin(std::string_view name, const SchemeParams& params = {});

struct CatalogEntry {
  std::string name;
  std::string description;
};
const std::vector<CatalogEntry>& catalog();

enum class Boundary { periodic, clamped };

std::string_view boundary_name(Boundary b);
Boundary parse_boundary(std::string_view s);

struct CurveSequence {
  std::vector<ManifoldPoint> points;
  Boundary boundary = Boundary::periodic;

  std::size_t size() const { return points.size(); }
  const ManifoldKind& kind() const { return points.front().kind(); }
  // Index resolution under the boundary policy.
  long resolve(long i) const;
};

// Throws CurveTooShort / KindMismatch.
void validate_curve(const CurveSequence& curve);

// Number of refined entries produced from a curve of `n` points.
std::size_t refined_size(std::size_t n, Boundary boundary);

// One refinement step. Periodic curves double in length; clamped curves
// replicate their end points as needed and produce 2n - 1 entries, so the
// parameter range is preserved. Independent entries are evaluated with
// OpenMP; results are identical to serial::refine_once.
CurveSequence refine_once(const GimScheme& scheme, const CurveSequence& curve);
CurveSequence refine(const GimScheme& scheme, const CurveSequence& curve, int levels);

// Every level from 0 (the input) to `levels`.
std::vector<CurveSequence> refine_chain(const GimScheme& scheme, const CurveSequence& curve, int levels);

namespace serial {
CurveSequence refine_once(const GimScheme& scheme, const CurveSequence& curve);
CurveSequence refine(const GimScheme& scheme, const CurveSequence& curve, int levels);
}  // namespace serial

}  // namespace gim
