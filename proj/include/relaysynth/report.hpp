#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relaysynth/bead_optimum.hpp"
#include "relaysynth/sn012.hpp"
#include "relaysynth/steiner_tree.hpp"

namespace relaysynth {

inline constexpr int kReportVersion = 1;

enum class Algorithm { mst, scheme, sn012 };

[[nodiscard]] Algorithm parse_algorithm(const std::string& s);
[[nodiscard]] std::string algorithm_name(Algorithm a);

struct SolveConfig {
  Algorithm algorithm = Algorithm::sn012;
  int k = 3;
  Backend backend = Backend::exact;
  OracleConfig oracle;
  TauIntegralOptions exact;
  // brute_force_opt on Euclidean instances with at most this many terminals (0 = never).
  std::size_t opt_terminals = 0;
  int opt_max_steiner = 6;
};

struct RunRow {
  std::size_t index = 0;
  std::string instance_hash;
  std::string algorithm;
  std::string backend;  // sn012 only
  int k = 0;            // scheme only
  std::size_t terminals = 0;
  std::size_t steiner = 0;
  bool feasible = false;
  bool certified = false;   // steiner count is a proven bead optimum
  bool heuristic = false;   // a component fell back to a heuristic witness
  std::optional<Rational> tau_star;
  std::optional<std::int64_t> tau;
  std::optional<int> opt;
  double wall_ms = 0;

  // x / y with 0/0 = 1 and x/0 = none.
  [[nodiscard]] std::optional<double> ratio_vs_taustar() const;
  [[nodiscard]] std::optional<double> ratio_vs_opt() const;
  [[nodiscard]] std::optional<double> tau_over_opt() const;
  [[nodiscard]] std::optional<double> taustar_over_opt() const;
};

struct SolveOutcome {
  RunRow row;
  SolutionGraph graph;
};

// 64-bit FNV-1a of the canonical serialization, as 16 hex digits.
[[nodiscard]] std::string instance_hash(const Instance& instance);

// Dispatch, then re-verify the solution. Errors carry the instance hash.
[[nodiscard]] SolveOutcome solve(const Instance& instance, const SolveConfig& config, std::size_t index = 0);

[[nodiscard]] std::string solution_json(const Instance& instance, const SolutionGraph& g);
// Plane instances only.
[[nodiscard]] std::string solution_svg(const Instance& instance, const SolutionGraph& g);

// Timing goes to a separate top-level "timing" array so that the rest of
// the document is reproducible.
[[nodiscard]] std::string report_json(const std::vector<RunRow>& rows, bool with_timing = true);
[[nodiscard]] std::string report_csv(const std::vector<RunRow>& rows);
[[nodiscard]] const std::vector<std::string>& report_columns();

}  // namespace relaysynth
