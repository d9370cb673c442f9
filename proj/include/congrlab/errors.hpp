#pragma once
// Error vocabulary shared by all congrlab components.  Every domain error
// carries a stable machine-readable code (used by the CLI's error envelope)
// on top of the human-readable what() string.

#include <stdexcept>
#include <string>

namespace congrlab {

enum class Errc {
  zero_input,
  not_coprime,
  overflow,
  unsupported_degree,
  denominator_not_invertible,
  mismatched_field,
  ring_mismatch,
  bad_weight,
  bad_parameters,
  insufficient_precision,
  fractional_exponent,
  coprimality_failed,
  precondition_failed,
  not_in_table,
  parse_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg),
        code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

#define CONGRLAB_DEFINE_ERROR(ClassName, code_value)                  \
  class ClassName : public Error {                                    \
   public:                                                            \
    explicit ClassName(const std::string& msg)                        \
        : Error(Errc::code_value, msg) {}                             \
  }

CONGRLAB_DEFINE_ERROR(ZeroInput, zero_input);
CONGRLAB_DEFINE_ERROR(NotCoprime, not_coprime);
CONGRLAB_DEFINE_ERROR(Overflow, overflow);
CONGRLAB_DEFINE_ERROR(UnsupportedDegree, unsupported_degree);
CONGRLAB_DEFINE_ERROR(DenominatorNotInvertible, denominator_not_invertible);
CONGRLAB_DEFINE_ERROR(MismatchedField, mismatched_field);
CONGRLAB_DEFINE_ERROR(RingMismatch, ring_mismatch);
CONGRLAB_DEFINE_ERROR(BadWeight, bad_weight);
CONGRLAB_DEFINE_ERROR(BadParameters, bad_parameters);
CONGRLAB_DEFINE_ERROR(InsufficientPrecision, insufficient_precision);
CONGRLAB_DEFINE_ERROR(FractionalExponent, fractional_exponent);
CONGRLAB_DEFINE_ERROR(CoprimalityFailed, coprimality_failed);
CONGRLAB_DEFINE_ERROR(PreconditionFailed, precondition_failed);
CONGRLAB_DEFINE_ERROR(NotInTable, not_in_table);
CONGRLAB_DEFINE_ERROR(ParseError, parse_error);

#undef CONGRLAB_DEFINE_ERROR

}  // namespace congrlab
