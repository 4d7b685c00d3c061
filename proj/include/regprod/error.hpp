#pragma once

#include <stdexcept>
#include <string>

namespace regprod {

enum class ErrorKind {
  PoleAtNonPositiveInteger,
  PoleAtOne,
  PrecisionLoss,
  Overflow,
  InvalidArgument,
  CapExceeded,
  ShiftOnSequence,
  FormMismatch,
  NonMonic,
  RootOnSequence,
  RootFindingFailure,
  ZeroScale,
  ExpansionTooShort,
  QuadratureNonConvergence,
  TruncationInsufficient,
  RouteMismatch,
  NonPositiveBase,
  SpecInvalid,
  ZeroScanFailure,
  ZeroRefinementFailure,
  TailFitUnstable,
  SchemaError,
  CacheError,
};

enum class ErrorClass { input, domain, convergence };

const char* error_kind_name(ErrorKind k);
ErrorClass error_class(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace regprod
