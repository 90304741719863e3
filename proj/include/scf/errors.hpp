#pragma once

#include <stdexcept>
#include <string>

namespace scf {

enum class ErrorCode {
  EmptyOrders,
  FactorTooSmall,
  GroupTooLarge,
  GroupMismatch,
  NotReal,
  NonDividingBlock,
  BasisNotEnumerable,
  EmptySet,
  PairNotSufficient,
  NotCoordinated,
  RangeViolation,
  ZeroFunction,
  PartitionExhausted,
  SpectrumExhausted,
  NotConverged,
  InvariantViolation,
  ConfigError,
};

const char* to_string(ErrorCode code);

/// Library-wide exception. `datum` carries a numeric payload where one is
/// meaningful (e.g. the residual for NotConverged).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, double datum = 0.0)
      : std::runtime_error(message), code_(code), datum_(datum) {}

  ErrorCode code() const { return code_; }
  double datum() const { return datum_; }

 private:
  ErrorCode code_;
  double datum_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message,
                              double datum = 0.0) {
  throw Error(code, message, datum);
}

}  // namespace scf
