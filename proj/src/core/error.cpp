#include "msp/core/error.hpp"

namespace msp {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kEmptyStructure: return "EmptyStructure";
    case ErrorCode::kNonTriangleFace: return "NonTriangleFace";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kNonManifoldEdge: return "NonManifoldEdge";
    case ErrorCode::kBadCountsLine: return "BadCountsLine";
    case ErrorCode::kUnknownElement: return "UnknownElement";
    case ErrorCode::kSchemaVersionMismatch: return "SchemaVersionMismatch";
    case ErrorCode::kChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::kMissingColumn: return "MissingColumn";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kMissingBackboneAtom: return "MissingBackboneAtom";
    case ErrorCode::kUnknownVdwRadius: return "UnknownVdwRadius";
    case ErrorCode::kDegenerateNeighborhood: return "DegenerateNeighborhood";
    case ErrorCode::kZeroAreaFace: return "ZeroAreaFace";
    case ErrorCode::kCannotReach: return "CannotReach";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kZeroTotalWeight: return "ZeroTotalWeight";
    case ErrorCode::kDisconnectedInput: return "DisconnectedInput";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kEmptySample: return "EmptySample";
    case ErrorCode::kEmptySplit: return "EmptySplit";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kZeroVariance: return "ZeroVariance";
    case ErrorCode::kEmptyLayer: return "EmptyLayer";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace msp
