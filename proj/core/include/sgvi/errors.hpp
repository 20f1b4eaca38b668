#ifndef SGVI_ERRORS_HPP
#define SGVI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sgvi {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A matrix required to be symmetric positive definite failed factorization.
class NotPositiveDefinite : public Error {
public:
    explicit NotPositiveDefinite(const std::string& what) : Error(what) {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

/// Sigma-point scaling n_x + lambda <= 0.
class DegenerateScaling : public Error {
public:
    explicit DegenerateScaling(const std::string& what) : Error(what) {}
};

/// NaN or Inf encountered where a finite value is required.
class NonFiniteValue : public Error {
public:
    explicit NonFiniteValue(const std::string& what) : Error(what) {}
};

/// Range Jacobian evaluated at (or too close to) an anchor position.
class AnchorCoincidence : public Error {
public:
    explicit AnchorCoincidence(const std::string& what) : Error(what) {}
};

class LengthMismatch : public Error {
public:
    explicit LengthMismatch(const std::string& what) : Error(what) {}
};

} // namespace sgvi

#endif
