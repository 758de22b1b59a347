#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nodal_morse {

enum class ErrorCode {
  DisconnectedGraph,
  InvalidEdge,
  DimensionMismatch,
  NotInOG,
  NotSymmetric,
  InvalidRange,
  NoConvergence,
  EmbeddingPairingFailure,
  GraphMismatch,
  SimplicityLost,
  VanishingVertex,
  HypothesesViolated,
  NotShifted,
  SplitFailure,
  RankDeficientBasis,
  NotEigenvector,
  NotCritical,
  SolveFailure,
  ScanTooCoarse,
  BandNotFound,
  NonMonotone,
  DegenerateEdge,
  NotSingleVanishing,
  DegenerateEigenvalue,
  NotBipartite,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class VanishingVertexError : public Error {
 public:
  VanishingVertexError(int vertex, const std::string& what)
      : Error(ErrorCode::VanishingVertex, what), vertex_(vertex) {}

  int vertex() const noexcept { return vertex_; }

 private:
  int vertex_;
};

}  // namespace nodal_morse
