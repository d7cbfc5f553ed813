#pragma once

#include <stdexcept>
#include <string>

namespace relhom {

/// Failure taxonomy shared by the whole workbench. The CLI maps any
/// uncaught Error to exit code 1.
class Error : public std::runtime_error {
 public:
  enum class Kind {
    Parse,
    InvariantViolation,
    NotFiniteDimensional,
    InvalidRelation,
    FieldTooSmall,
    AlgebraMismatch,
    ZeroModule,
    NotExact,
    CycleCreatingGluing,
    InternalInconsistency,
  };

  Error(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline const char* error_kind_name(Error::Kind k) {
  switch (k) {
    case Error::Kind::Parse: return "ParseError";
    case Error::Kind::InvariantViolation: return "InvariantViolation";
    case Error::Kind::NotFiniteDimensional: return "NotFiniteDimensional";
    case Error::Kind::InvalidRelation: return "InvalidRelation";
    case Error::Kind::FieldTooSmall: return "FieldTooSmall";
    case Error::Kind::AlgebraMismatch: return "AlgebraMismatch";
    case Error::Kind::ZeroModule: return "ZeroModule";
    case Error::Kind::NotExact: return "NotExact";
    case Error::Kind::CycleCreatingGluing: return "CycleCreatingGluing";
    case Error::Kind::InternalInconsistency: return "InternalInconsistency";
  }
  return "Error";
}

[[noreturn]] inline void fail(Error::Kind kind, const std::string& msg) {
  throw Error(kind, std::string(error_kind_name(kind)) + ": " + msg);
}

/// Internal sanity checks. These guard invariants that can only break on
/// implementation bugs, so they abort loudly instead of returning verdicts.
inline void require_internal(bool cond, const std::string& msg) {
  if (!cond) fail(Error::Kind::InternalInconsistency, msg);
}

}  // namespace relhom
