#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pdde {

enum class Errc {
  SchemaError,
  NonSquareMatrix,
  DimensionMismatch,
  NonPositiveDelay,
  NonFiniteEntry,
  SingularMode,
  DegenerateMode,
  WindowTooSmall,
  ZeroModeRequested,
  EmptyFamily,
  QuadratureUnderresolved,
  StepTooLarge,
  Divergence,
  OracleNotConverged,
  TruncationTooSmall,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Carries the offending mode indices, e.g. singular symbol at k.
class ModeError : public Error {
 public:
  ModeError(Errc code, const std::string& msg, std::vector<long> modes)
      : Error(code, msg), modes_(std::move(modes)) {}

  const std::vector<long>& modes() const { return modes_; }

 private:
  std::vector<long> modes_;
};

struct Violation {
  Errc code;
  std::string detail;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error(violations.empty() ? Errc::SchemaError : violations.front().code,
              summarize(violations)),
        violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string summarize(const std::vector<Violation>& vs);
  std::vector<Violation> violations_;
};

}  // namespace pdde
