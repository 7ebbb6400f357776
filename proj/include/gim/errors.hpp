#pragma once

#include <stdexcept>
#include <string>

namespace gim {

// Base of every error raised by the library. Validation errors describe bad
// input (CLI exit code 2); geometry errors describe data the manifold
// operations cannot handle (CLI exit code 3).
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  virtual const char* name() const noexcept = 0;
};

class ValidationError : public Error {
public:
  using Error::Error;
};

class GeometryError : public Error {
public:
  using Error::Error;
};

#define GIM_DEFINE_ERROR(Name, Base)                                  \
  class Name : public Base {                                          \
  public:                                                             \
    using Base::Base;                                                 \
    const char* name() const noexcept override { return #Name; }      \
  };

GIM_DEFINE_ERROR(KindMismatch, ValidationError)
GIM_DEFINE_ERROR(InvalidPoint, ValidationError)
GIM_DEFINE_ERROR(InvalidWeights, ValidationError)
GIM_DEFINE_ERROR(NonSymmetricWeights, ValidationError)
GIM_DEFINE_ERROR(MaskRowSumViolation, ValidationError)
GIM_DEFINE_ERROR(UnknownScheme, ValidationError)
GIM_DEFINE_ERROR(UnknownManifold, ValidationError)
GIM_DEFINE_ERROR(OmegaOutOfRange, ValidationError)
GIM_DEFINE_ERROR(CurveTooShort, ValidationError)
GIM_DEFINE_ERROR(ParameterOutOfRange, ValidationError)
GIM_DEFINE_ERROR(FormatError, ValidationError)

GIM_DEFINE_ERROR(AntipodalPoints, GeometryError)
GIM_DEFINE_ERROR(ExtrapolationOutOfRange, GeometryError)
GIM_DEFINE_ERROR(TangentTooLong, GeometryError)
GIM_DEFINE_ERROR(NotPositiveDefinite, GeometryError)
GIM_DEFINE_ERROR(DegenerateNormalizer, GeometryError)
GIM_DEFINE_ERROR(NoConvergence, GeometryError)

#undef GIM_DEFINE_ERROR

// A geometry failure while evaluating one refined entry. `level` is the
// refinement step (1-based, 0 when raised by a single refine_once call) and
// `index` the output entry whose rule failed.
class RefineError : public GeometryError {
public:
  RefineError(std::string cause, std::string what, int level, long index)
      : GeometryError("level " + std::to_string(level) + ", index " +
                      std::to_string(index) + ": " + what),
        cause_(std::move(cause)), detail_(std::move(what)), level_(level),
        index_(index) {}

  const char* name() const noexcept override { return "RefineError"; }
  const std::string& cause() const noexcept { return cause_; }
  const std::string& detail() const noexcept { return detail_; }
  int level() const noexcept { return level_; }
  long index() const noexcept { return index_; }

  RefineError at_level(int level) const {
    return RefineError(cause_, detail_, level, index_);
  }

private:
  std::string cause_;
  std::string detail_;
  int level_;
  long index_;
};

}  // namespace gim
