#pragma once

#include <stdexcept>
#include <string>

namespace infogeo {

/// Base class for all library errors, so callers can catch one type.
/// Argument validation failures throw std::invalid_argument directly.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An optional family capability (analytic score, analytic metric, sampler)
/// was requested but is absent.
class CapabilityMissingError : public Error {
  using Error::Error;
};

/// The operation is defined for real nonnegative densities only.
class UnsupportedForComplexError : public Error {
  using Error::Error;
};

/// An integrand produced a non-finite value, or an integral result failed a
/// numeric sanity check.
class NumericError : public Error {
  using Error::Error;
};

/// Tensor-grid node count above the hard budget.
class BudgetExceededError : public Error {
  using Error::Error;
};

/// Imaginary residue of a metric integral at or above the realification
/// tolerance.
class RealificationError : public Error {
  using Error::Error;
};

/// |p| below working precision where a score denominator is required.
class DegenerateDensityError : public Error {
  using Error::Error;
};

}  // namespace infogeo
