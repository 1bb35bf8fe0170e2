#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relaysynth/bead_optimum.hpp"
#include "relaysynth/cut_lp.hpp"
#include "relaysynth/steiner_tree.hpp"

namespace relaysynth {

enum class Backend { exact, primal_dual };

[[nodiscard]] Backend parse_backend(const std::string& s);
[[nodiscard]] std::string backend_name(Backend b);

struct SnBackendResult {
  BeadGraph graph;             // k = 2
  std::vector<int> selected;   // sorted edge ids
  std::int64_t cost = 0;
  bool certified = false;      // exact optimum over bead solutions
  Rational dual_value;         // moat total for the primal-dual backend
  std::optional<Rational> tau_star;
};

struct SnOptions {
  TauIntegralOptions exact;
  // Run brute_force_opt for cost/opt when the instance has at most this
  // many terminals (0 disables).
  std::size_t opt_terminals = 0;
  int opt_max_steiner = 6;
  OracleConfig oracle;
};

[[nodiscard]] SnBackendResult sn_backend_exact(const Instance& instance, const SnOptions& options = {});
[[nodiscard]] SnBackendResult sn_backend_primal_dual(const Instance& instance);

struct SnPipelineResult {
  SnBackendResult backend;
  Backend kind = Backend::exact;
  Rational tau_star;
  SolutionGraph graph;            // realized bead placement
  std::optional<int> opt;         // brute_force_opt when affordable
  [[nodiscard]] std::size_t steiner_count() const { return graph.steiner.size(); }
};

// Bead graph (k = 2), backend, realization, verification. Throws
// ErrorCode::internal if the realization is not feasible.
[[nodiscard]] SnPipelineResult solve_sn_msp_012(const Instance& instance, Backend backend,
                                                const SnOptions& options = {});

struct WitnessAudit {
  std::size_t steiner = 0;
  Rational value;
  Rational bound;             // Delta |S| / 2
  bool fractional_ok = false;
  bool within_bound = false;
  ComponentStructure structure;
  [[nodiscard]] bool ok() const { return fractional_ok && within_bound && structure.ok(); }
};

// Prunes `g` to a minimal solution and checks the half-integral witness.
[[nodiscard]] WitnessAudit audit_witness(const Instance& instance, const SolutionGraph& g);

struct DegreeReduceResult {
  SolutionGraph graph;
  int swaps = 0;
  bool converged = false;
  int max_steiner_degree = 0;
  double length_before = 0;
  double length_after = 0;
};

// Edge swaps at Steiner nodes of degree above Delta: replace the longer of
// sa, sb by ab for the closest admissible neighbor pair, keep it only if the
// result stays feasible, and re-prune.
[[nodiscard]] DegreeReduceResult degree_reduce(const Instance& instance, const SolutionGraph& solution);

}  // namespace relaysynth
