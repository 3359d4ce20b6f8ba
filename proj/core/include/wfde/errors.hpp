#ifndef WFDE_ERRORS_HPP
#define WFDE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wfde {

// Parameter quadruple outside the admissible range; message names the
// violated inequality.
class RangeViolation : public std::invalid_argument {
public:
  explicit RangeViolation(const std::string& what) : std::invalid_argument(what) {}
};

class DomainError : public std::invalid_argument {
public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

class RegimeError : public std::invalid_argument {
public:
  explicit RegimeError(const std::string& what) : std::invalid_argument(what) {}
};

class GeometryError : public std::invalid_argument {
public:
  explicit GeometryError(const std::string& what) : std::invalid_argument(what) {}
};

class GradingError : public std::invalid_argument {
public:
  explicit GradingError(const std::string& what) : std::invalid_argument(what) {}
};

class RegularityError : public std::invalid_argument {
public:
  explicit RegularityError(const std::string& what) : std::invalid_argument(what) {}
};

class ZeroDatum : public std::invalid_argument {
public:
  explicit ZeroDatum(const std::string& what) : std::invalid_argument(what) {}
};

class ThresholdExceeded : public std::invalid_argument {
public:
  explicit ThresholdExceeded(const std::string& what) : std::invalid_argument(what) {}
};

class QuadratureNonConvergence : public std::runtime_error {
public:
  explicit QuadratureNonConvergence(const std::string& what) : std::runtime_error(what) {}
};

class NewtonDivergence : public std::runtime_error {
public:
  explicit NewtonDivergence(const std::string& what) : std::runtime_error(what) {}
};

class NonphysicalState : public std::runtime_error {
public:
  explicit NonphysicalState(const std::string& what) : std::runtime_error(what) {}
};

class NotExtinct : public std::runtime_error {
public:
  explicit NotExtinct(const std::string& what) : std::runtime_error(what) {}
};

class ZeroInfimum : public std::runtime_error {
public:
  explicit ZeroInfimum(const std::string& what) : std::runtime_error(what) {}
};

class InsufficientSamples : public std::runtime_error {
public:
  explicit InsufficientSamples(const std::string& what) : std::runtime_error(what) {}
};

class MissingConstant : public std::runtime_error {
public:
  explicit MissingConstant(const std::string& what) : std::runtime_error(what) {}
};

} // namespace wfde

#endif
