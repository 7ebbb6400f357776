#include "gim/schemes.hpp"

#include <exception>
#include <vector>

namespace gim {

namespace {

void check_refinable(const GimScheme& scheme, const CurveSequence& curve) {
  validate_curve(curve);
  if (curve.boundary == Boundary::clamped) {
    const int lo = std::min(scheme.even_rule.min_offset(), scheme.odd_rule.min_offset());
    const int hi = std::max(scheme.even_rule.max_offset(), scheme.odd_rule.max_offset());
    const auto width = static_cast<std::size_t>(hi - lo + 1);
    if (curve.size() < width) {
      throw CurveTooShort("clamped curve has " + std::to_string(curve.size()) +
                          " points; scheme " + scheme.name + " needs at least " + std::to_string(width));
    }
  }
}

ManifoldPoint refine_entry(const GimScheme& scheme, const CurveSequence& curve, long m) {
  const long j = m / 2;
  const GimRule& rule = (m % 2 == 0) ? scheme.even_rule : scheme.odd_rule;
  std::vector<ManifoldPoint> stencil;
  stencil.reserve(rule.point_offsets.size());
  for (int off : rule.point_offsets) stencil.push_back(curve.points[static_cast<std::size_t>(curve.resolve(j + off))]);
  return evaluate_rule(rule, stencil);
}

RefineError wrap(const GeometryError& e, long index) {
  if (const auto* r = dynamic_cast<const RefineError*>(&e)) return *r;
  return RefineError(e.name(), e.what(), 0, index);
}

}  // namespace

CurveSequence refine_once(const GimScheme& scheme, const CurveSequence& curve) {
  check_refinable(scheme, curve);
  const long count = static_cast<long>(refined_size(curve.size(), curve.boundary));
  CurveSequence out{std::vector<ManifoldPoint>(static_cast<std::size_t>(count)), curve.boundary};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));

#pragma omp parallel for schedule(static)
  for (long m = 0; m < count; ++m) {
    try {
      out.points[static_cast<std::size_t>(m)] = refine_entry(scheme, curve, m);
    } catch (...) {
      errors[static_cast<std::size_t>(m)] = std::current_exception();
    }
  }

  // Report the lowest failing index so the error is independent of scheduling.
  for (long m = 0; m < count; ++m) {
    if (!errors[static_cast<std::size_t>(m)]) continue;
    try {
      std::rethrow_exception(errors[static_cast<std::size_t>(m)]);
    } catch (const GeometryError& e) {
      throw wrap(e, m);
    }
  }
  return out;
}

CurveSequence refine(const GimScheme& scheme, const CurveSequence& curve, int levels) {
  return refine_chain(scheme, curve, levels).back();
}

std::vector<CurveSequence> refine_chain(const GimScheme& scheme, const CurveSequence& curve, int levels) {
  if (levels < 0) throw ParameterOutOfRange("refinement levels must be >= 0");
  validate_curve(curve);
  std::vector<CurveSequence> chain{curve};
  chain.reserve(static_cast<std::size_t>(levels) + 1);
  for (int k = 1; k <= levels; ++k) {
    try {
      chain.push_back(refine_once(scheme, chain.back()));
    } catch (const RefineError& e) {
      throw e.at_level(k);
    }
  }
  return chain;
}

namespace serial {

CurveSequence refine_once(const GimScheme& scheme, const CurveSequence& curve) {
  check_refinable(scheme, curve);
  const long count = static_cast<long>(refined_size(curve.size(), curve.boundary));
  CurveSequence out{{}, curve.boundary};
  out.points.reserve(static_cast<std::size_t>(count));
  for (long m = 0; m < count; ++m) {
    try {
      out.points.push_back(refine_entry(scheme, curve, m));
    } catch (const GeometryError& e) {
      throw wrap(e, m);
    }
  }
  return out;
}

CurveSequence refine(const GimScheme& scheme, const CurveSequence& curve, int levels) {
  if (levels < 0) throw ParameterOutOfRange("refinement levels must be >= 0");
  validate_curve(curve);
  CurveSequence current = curve;
  for (int k = 1; k <= levels; ++k) {
    try {
      current = serial::refine_once(scheme, current);
    } catch (const RefineError& e) {
      throw e.at_level(k);
    }
  }
  return current;
}

}  // namespace serial

}  // namespace gim
