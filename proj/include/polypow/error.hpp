#pragma once

#include <stdexcept>
#include <string>

namespace polypow {

// Every failure raised by the library. `stage` names the pipeline step
// (e.g. "unroll", "telescoper") so CLI diagnostics can point at it.
class Error : public std::runtime_error {
 public:
  enum class Kind {
    Parse,
    Precondition,
    DivisionByZero,
    ParameterCollision,
    NotFound,
    Mismatch,
    Internal,
  };

  Error(Kind kind, std::string stage, const std::string& message)
      : std::runtime_error(stage.empty() ? message : stage + ": " + message),
        kind_(kind),
        stage_(std::move(stage)) {}

  Kind kind() const noexcept { return kind_; }
  const std::string& stage() const noexcept { return stage_; }

 private:
  Kind kind_;
  std::string stage_;
};

inline const char* kind_name(Error::Kind k) {
  switch (k) {
    case Error::Kind::Parse: return "parse";
    case Error::Kind::Precondition: return "precondition";
    case Error::Kind::DivisionByZero: return "division by zero";
    case Error::Kind::ParameterCollision: return "parameter collision";
    case Error::Kind::NotFound: return "not found";
    case Error::Kind::Mismatch: return "mismatch";
    case Error::Kind::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace polypow
