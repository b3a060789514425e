#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace msp {

enum class ErrorCode {
  kMalformedRecord,
  kEmptyStructure,
  kNonTriangleFace,
  kIndexOutOfRange,
  kNonManifoldEdge,
  kBadCountsLine,
  kUnknownElement,
  kSchemaVersionMismatch,
  kChecksumMismatch,
  kMissingColumn,
  kDuplicateId,
  kMissingBackboneAtom,
  kUnknownVdwRadius,
  kDegenerateNeighborhood,
  kZeroAreaFace,
  kCannotReach,
  kDimensionMismatch,
  kZeroTotalWeight,
  kDisconnectedInput,
  kInvalidArgument,
  kShapeMismatch,
  kNonFinite,
  kEmptySample,
  kEmptySplit,
  kLengthMismatch,
  kZeroVariance,
  kEmptyLayer,
  kIoError,
};

std::string_view error_code_name(ErrorCode code);

// Single exception type for the toolkit; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace msp
