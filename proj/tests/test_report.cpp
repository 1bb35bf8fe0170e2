#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "doctest.h"
#include "relaysynth/generate.hpp"
#include "relaysynth/instance_io.hpp"
#include "relaysynth/report.hpp"

using namespace relaysynth;

namespace {

std::string fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<RunRow> run_all(const Instance& inst) {
  std::vector<RunRow> rows;
  SolveConfig c;
  c.opt_terminals = 6;
  for (auto a : {Algorithm::mst, Algorithm::scheme, Algorithm::sn012}) {
    c.algorithm = a;
    c.k = 5;
    if (a != Algorithm::sn012 && !inst.all_pairs_requirement(1)) continue;
    rows.push_back(solve(inst, c, rows.size()).row);
  }
  return rows;
}

}  // namespace

TEST_CASE("instance hash is FNV-1a of the serialization") {
  const auto p = pentagon_instance();
  CHECK(instance_hash(p) == fnv1a(serialize_instance(p)));
  CHECK(instance_hash(p) != instance_hash(square_instance()));
  CHECK(instance_hash(parse_instance(serialize_instance(p))) == instance_hash(p));
}

TEST_CASE("ratio conventions") {
  RunRow r;
  r.steiner = 0;
  r.tau_star = Rational(0);
  r.opt = 0;
  CHECK(*r.ratio_vs_taustar() == 1.0);
  CHECK(*r.ratio_vs_opt() == 1.0);
  r.steiner = 3;
  CHECK_FALSE(r.ratio_vs_opt().has_value());
  r.opt = 2;
  CHECK(*r.ratio_vs_opt() == doctest::Approx(1.5));
  r.tau_star.reset();
  CHECK_FALSE(r.ratio_vs_taustar().has_value());
}

TEST_CASE("pentagon rows") {
  const auto rows = run_all(pentagon_instance());
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].algorithm == "mst");
  CHECK(rows[0].steiner == 4);
  REQUIRE(rows[0].opt);
  CHECK(*rows[0].opt == 1);
  CHECK(*rows[0].ratio_vs_opt() == 4.0);
  CHECK(rows[1].steiner == 1);
  for (const auto& r : rows) CHECK(r.feasible);
}

TEST_CASE("reports are reproducible without timing") {
  GeneratorConfig g;
  g.n = 5;
  g.seed = 7;
  for (const auto& inst : {generate(g), pentagon_instance()}) {
    const auto a = report_json(run_all(inst), false);
    CHECK(a == report_json(run_all(inst), false));
    const auto j = nlohmann::json::parse(report_json(run_all(inst), true));
    CHECK(j.contains("timing"));
    CHECK_FALSE(nlohmann::json::parse(a).contains("timing"));
  }
}

TEST_CASE("csv layout") {
  const auto rows = run_all(square_instance());
  const auto csv = report_csv(rows);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  std::string expect;
  for (const auto& c : report_columns()) expect += (expect.empty() ? "" : ",") + c;
  CHECK(header == expect);
  CHECK(report_columns().front() == "report_version");
  int lines = 0;
  for (std::string line; std::getline(in, line);) {
    ++lines;
    CHECK(std::count(line.begin(), line.end(), ',') == static_cast<long>(report_columns().size()) - 1);
  }
  CHECK(lines == static_cast<int>(rows.size()));
}

TEST_CASE("svg output") {
  const auto p = pentagon_instance();
  SolveConfig c;
  c.algorithm = Algorithm::mst;
  const auto o = solve(p, c);
  const auto svg = solution_svg(p, o.graph);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
}
