#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace relaysynth {

using NodeId = int;

// Geometric tolerance on the unit-distance test.
inline constexpr double kGeoEps = 1e-9;

enum class ErrorCode {
  invalid_argument,
  parse,
  limit,
  infeasible,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

// Undirected edge; constructors keep u <= v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  Edge() = default;
  Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  [[nodiscard]] NodeId other(NodeId x) const { return x == u ? v : u; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

}  // namespace relaysynth
