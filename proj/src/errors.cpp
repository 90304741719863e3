#include "scf/errors.hpp"

namespace scf {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyOrders: return "EmptyOrders";
    case ErrorCode::FactorTooSmall: return "FactorTooSmall";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::NotReal: return "NotReal";
    case ErrorCode::NonDividingBlock: return "NonDividingBlock";
    case ErrorCode::BasisNotEnumerable: return "BasisNotEnumerable";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::PairNotSufficient: return "PairNotSufficient";
    case ErrorCode::NotCoordinated: return "NotCoordinated";
    case ErrorCode::RangeViolation: return "RangeViolation";
    case ErrorCode::ZeroFunction: return "ZeroFunction";
    case ErrorCode::PartitionExhausted: return "PartitionExhausted";
    case ErrorCode::SpectrumExhausted: return "SpectrumExhausted";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "UnknownError";
}

}  // namespace scf
