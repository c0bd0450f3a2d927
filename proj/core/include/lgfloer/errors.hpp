#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lgf {

enum class ErrorKind {
  Catalogue,
  Argument,
  SingularSplit,
  IntegrationFailure,
  Path,
  Homotopy,
  Frame,
  ExactnessViolation,
  Transversality,
  DegeneratePlane,
  Sampling,
  Anchor,
  NumericalConsistency,
  TheoremCheck,
  Mesh,
  Hypothesis,
  Validation,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace lgf
