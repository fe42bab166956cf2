#pragma once

#include <stdexcept>
#include <string>

namespace coleman {

// Machine-parsable error codes; the CLI prints them verbatim.
enum class ErrorCode {
  BadPrime,
  BadDegree,
  NotMonic,
  BadCoefficient,
  BadReduction,
  PrimeMismatch,
  DivisionByZero,
  NotAResidue,
  BadResidueChoice,
  NotAUnit,
  NonIntegral,
  ParseError,
  NotOnCurve,
  InfiniteDisc,
  WeierstrassDisc,
  DiscMismatch,
  PoleAtEndpoint,
  EvenForm,
  DivergentExactPart,
  SingularSystem,
  InsufficientPrecision,
  BadArguments,
  MalformedFile,
};

const char* error_code_name(ErrorCode code);

class ColemanError : public std::runtime_error {
 public:
  ColemanError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }
  std::string code_name() const { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw ColemanError(code, what);
}

}  // namespace coleman
