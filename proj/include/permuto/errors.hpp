#pragma once

#include <stdexcept>
#include <string>

namespace permuto {

// Failure categories surfaced by the library. CLI maps these to exit codes.
enum class errc {
  empty_side,
  isolated_vertex,
  disconnected,
  duplicate_edge,
  invalid_edge,
  not_spanning,
  edge_in_tree,
  empty_support,
  invalid_weight,
  leaf_edge,
  not_in_polytope,
  not_good,
  broken_partition,
  non_generic_heights,
  genericity_exhausted,
  validation_failed,
  size_limit,
  unsupported_dimension,
  bad_input,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::empty_side: return "EmptySide";
    case errc::isolated_vertex: return "IsolatedVertex";
    case errc::disconnected: return "Disconnected";
    case errc::duplicate_edge: return "DuplicateEdge";
    case errc::invalid_edge: return "InvalidEdge";
    case errc::not_spanning: return "NotSpanning";
    case errc::edge_in_tree: return "EdgeInTree";
    case errc::empty_support: return "EmptySupport";
    case errc::invalid_weight: return "InvalidWeight";
    case errc::leaf_edge: return "LeafEdge";
    case errc::not_in_polytope: return "NotInPolytope";
    case errc::not_good: return "NotGood";
    case errc::broken_partition: return "BrokenPartition";
    case errc::non_generic_heights: return "NonGenericHeights";
    case errc::genericity_exhausted: return "GenericityExhausted";
    case errc::validation_failed: return "ValidationFailed";
    case errc::size_limit: return "SizeLimit";
    case errc::unsupported_dimension: return "UnsupportedDimension";
    case errc::bad_input: return "BadInput";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace permuto
