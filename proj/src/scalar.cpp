#include "regprod/scalar.hpp"

#include <iomanip>
#include <sstream>

#include "regprod/error.hpp"

namespace regprod {

std::string to_decimal(double x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

std::string to_decimal(const mp50& x, int digits) {
  return x.str(digits);
}

std::string to_decimal(const mp100& x, int digits) {
  return x.str(digits);
}

template <>
double parse_real<double>(const std::string& s) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    fail(ErrorKind::SchemaError, "not a decimal number: '" + s + "'");
  }
  if (pos != s.size()) fail(ErrorKind::SchemaError, "not a decimal number: '" + s + "'");
  return v;
}

template <>
mp50 parse_real<mp50>(const std::string& s) {
  // Validate with strtod first so that junk is reported as a schema error.
  (void)parse_real<double>(s);
  return mp50(s);
}

template <>
mp100 parse_real<mp100>(const std::string& s) {
  (void)parse_real<double>(s);
  return mp100(s);
}

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::PoleAtNonPositiveInteger: return "PoleAtNonPositiveInteger";
    case ErrorKind::PoleAtOne: return "PoleAtOne";
    case ErrorKind::PrecisionLoss: return "PrecisionLoss";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::ShiftOnSequence: return "ShiftOnSequence";
    case ErrorKind::FormMismatch: return "FormMismatch";
    case ErrorKind::NonMonic: return "NonMonic";
    case ErrorKind::RootOnSequence: return "RootOnSequence";
    case ErrorKind::RootFindingFailure: return "RootFindingFailure";
    case ErrorKind::ZeroScale: return "ZeroScale";
    case ErrorKind::ExpansionTooShort: return "ExpansionTooShort";
    case ErrorKind::QuadratureNonConvergence: return "QuadratureNonConvergence";
    case ErrorKind::TruncationInsufficient: return "TruncationInsufficient";
    case ErrorKind::RouteMismatch: return "RouteMismatch";
    case ErrorKind::NonPositiveBase: return "NonPositiveBase";
    case ErrorKind::SpecInvalid: return "SpecInvalid";
    case ErrorKind::ZeroScanFailure: return "ZeroScanFailure";
    case ErrorKind::ZeroRefinementFailure: return "ZeroRefinementFailure";
    case ErrorKind::TailFitUnstable: return "TailFitUnstable";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::CacheError: return "CacheError";
  }
  return "Unknown";
}

ErrorClass error_class(ErrorKind k) {
  switch (k) {
    case ErrorKind::SchemaError:
    case ErrorKind::SpecInvalid:
    case ErrorKind::NonMonic:
    case ErrorKind::InvalidArgument:
    case ErrorKind::CapExceeded:
      return ErrorClass::input;
    case ErrorKind::PoleAtNonPositiveInteger:
    case ErrorKind::PoleAtOne:
    case ErrorKind::ShiftOnSequence:
    case ErrorKind::RootOnSequence:
    case ErrorKind::ZeroScale:
    case ErrorKind::NonPositiveBase:
      return ErrorClass::domain;
    default:
      return ErrorClass::convergence;
  }
}

}  // namespace regprod
