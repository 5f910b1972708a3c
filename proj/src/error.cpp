#include "browmad/error.hpp"

namespace browmad {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::MalformedFile: return "MalformedFile";
        case ErrorCode::WrongPointCount: return "WrongPointCount";
        case ErrorCode::DegenerateRegion: return "DegenerateRegion";
        case ErrorCode::OutOfBounds: return "OutOfBounds";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::EmptyScores: return "EmptyScores";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::DegenerateAlignment: return "DegenerateAlignment";
        case ErrorCode::MalformedManifest: return "MalformedManifest";
        case ErrorCode::MissingFile: return "MissingFile";
        case ErrorCode::DecodeFailure: return "DecodeFailure";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::SingleClassGroup: return "SingleClassGroup";
        case ErrorCode::InsufficientData: return "InsufficientData";
    }
    return "Unknown";
}

}  // namespace browmad
