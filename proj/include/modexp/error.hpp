#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace modexp {

enum class Errc {
  syntax_error,
  non_positive_weight,
  vertex_out_of_range,
  empty_set,
  zero_volume_side,
  too_few_vertices,
  size_limit_exceeded,
  disconnected,
  zero_degree_vertex,
  partition_mismatch,
  empty_graph,
  out_of_range,
  edgeless_subgraph,
  not_a_component_union,
  not_a_component,
  isolated_vertices_present,
  hypothesis_violated,
  too_many_edges_in_h,
  degenerate_parameters,
  postcondition_failed,
  overflow,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::syntax_error: return "SyntaxError";
    case Errc::non_positive_weight: return "NonPositiveWeight";
    case Errc::vertex_out_of_range: return "VertexOutOfRange";
    case Errc::empty_set: return "EmptySet";
    case Errc::zero_volume_side: return "ZeroVolumeSide";
    case Errc::too_few_vertices: return "TooFewVertices";
    case Errc::size_limit_exceeded: return "SizeLimitExceeded";
    case Errc::disconnected: return "Disconnected";
    case Errc::zero_degree_vertex: return "ZeroDegreeVertex";
    case Errc::partition_mismatch: return "PartitionMismatch";
    case Errc::empty_graph: return "EmptyGraph";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::edgeless_subgraph: return "EdgelessSubgraph";
    case Errc::not_a_component_union: return "NotAComponentUnion";
    case Errc::not_a_component: return "NotAComponent";
    case Errc::isolated_vertices_present: return "IsolatedVerticesPresent";
    case Errc::hypothesis_violated: return "HypothesisViolated";
    case Errc::too_many_edges_in_h: return "TooManyEdgesInH";
    case Errc::degenerate_parameters: return "DegenerateParameters";
    case Errc::postcondition_failed: return "PostconditionFailed";
    case Errc::overflow: return "Overflow";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, const std::string& what)
      : Error(Errc::syntax_error, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace modexp
