#ifndef POISSON_ERRORS_HPP
#define POISSON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace poisson {

enum class ErrorCode {
  NotPrime,
  MalformedSpec,
  DIsSquare,
  FieldMismatch,
  AmbientMismatch,
  InfiniteField,
  NotASubalgebra,
  NotAnIdeal,
  NotLie,
  NotFound,
  FormulaMismatch,
  NonCommutingFamily,
  SingularTransform,
  JacobiFails,
  BudgetExceeded,
  UnknownName,
  BadParams,
  UnknownCheck,
  Malformed,
  IndexOutOfRange,
  AxiomFailure,
  Internal,
};

const char* error_code_name(ErrorCode c);

/// All library failures are reported through this single exception type;
/// the code distinguishes programmatic handling, what() carries context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

}  // namespace poisson

#endif
