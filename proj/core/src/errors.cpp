#include "nodal_morse/errors.hpp"

namespace nodal_morse {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::InvalidEdge: return "InvalidEdge";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotInOG: return "NotInOG";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::EmbeddingPairingFailure: return "EmbeddingPairingFailure";
    case ErrorCode::GraphMismatch: return "GraphMismatch";
    case ErrorCode::SimplicityLost: return "SimplicityLost";
    case ErrorCode::VanishingVertex: return "VanishingVertex";
    case ErrorCode::HypothesesViolated: return "HypothesesViolated";
    case ErrorCode::NotShifted: return "NotShifted";
    case ErrorCode::SplitFailure: return "SplitFailure";
    case ErrorCode::RankDeficientBasis: return "RankDeficientBasis";
    case ErrorCode::NotEigenvector: return "NotEigenvector";
    case ErrorCode::NotCritical: return "NotCritical";
    case ErrorCode::SolveFailure: return "SolveFailure";
    case ErrorCode::ScanTooCoarse: return "ScanTooCoarse";
    case ErrorCode::BandNotFound: return "BandNotFound";
    case ErrorCode::NonMonotone: return "NonMonotone";
    case ErrorCode::DegenerateEdge: return "DegenerateEdge";
    case ErrorCode::NotSingleVanishing: return "NotSingleVanishing";
    case ErrorCode::DegenerateEigenvalue: return "DegenerateEigenvalue";
    case ErrorCode::NotBipartite: return "NotBipartite";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace nodal_morse
