#include "relaysynth/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "relaysynth/connectivity.hpp"
#include "relaysynth/instance_io.hpp"
#include "relaysynth/local_replacement.hpp"

namespace relaysynth {

namespace {

std::optional<double> ratio(double x, std::optional<double> y) {
  if (!y) return std::nullopt;
  if (*y == 0) return x == 0 ? std::optional<double>(1.0) : std::nullopt;
  return x / *y;
}

std::string fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

nlohmann::json opt_json(const std::optional<double>& x) { return x ? nlohmann::json(*x) : nlohmann::json(nullptr); }

}  // namespace

Algorithm parse_algorithm(const std::string& s) {
  if (s == "mst") return Algorithm::mst;
  if (s == "scheme") return Algorithm::scheme;
  if (s == "sn012") return Algorithm::sn012;
  fail(ErrorCode::invalid_argument, "unknown algorithm '" + s + "' (expected mst, scheme or sn012)");
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::mst: return "mst";
    case Algorithm::scheme: return "scheme";
    case Algorithm::sn012: return "sn012";
  }
  return "?";
}

std::optional<double> RunRow::ratio_vs_taustar() const {
  return ratio(static_cast<double>(steiner), tau_star ? std::optional<double>(tau_star->get_d()) : std::nullopt);
}
std::optional<double> RunRow::ratio_vs_opt() const {
  return ratio(static_cast<double>(steiner), opt ? std::optional<double>(*opt) : std::nullopt);
}
std::optional<double> RunRow::tau_over_opt() const {
  if (!tau) return std::nullopt;
  return ratio(static_cast<double>(*tau), opt ? std::optional<double>(*opt) : std::nullopt);
}
std::optional<double> RunRow::taustar_over_opt() const {
  if (!tau_star) return std::nullopt;
  return ratio(tau_star->get_d(), opt ? std::optional<double>(*opt) : std::nullopt);
}

std::string instance_hash(const Instance& instance) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : serialize_instance(instance)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SolveOutcome solve(const Instance& instance, const SolveConfig& config, std::size_t index) {
  SolveOutcome out;
  auto& row = out.row;
  row.index = index;
  row.instance_hash = instance_hash(instance);
  row.algorithm = algorithm_name(config.algorithm);
  row.terminals = instance.size();
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (config.algorithm) {
      case Algorithm::mst:
        out.graph = mst_baseline(instance);
        break;
      case Algorithm::scheme: {
        row.k = config.k;
        auto r = st_msp_scheme(instance, SchemeConfig{config.k, config.oracle});
        row.heuristic = r.heuristic_components;
        out.graph = std::move(r.graph);
        break;
      }
      case Algorithm::sn012: {
        row.backend = backend_name(config.backend);
        SnOptions opts;
        opts.exact = config.exact;
        opts.oracle = config.oracle;
        auto r = solve_sn_msp_012(instance, config.backend, opts);
        row.tau_star = r.tau_star;
        row.certified = r.backend.certified;
        if (r.backend.certified) row.tau = r.backend.cost;
        out.graph = std::move(r.graph);
        break;
      }
    }
    row.steiner = out.graph.steiner.size();
    row.feasible = is_feasible(instance, out.graph);
    if (!row.feasible) fail(ErrorCode::internal, "solution failed verification");
    if (config.opt_terminals > 0 && instance.size() <= config.opt_terminals &&
        instance.metric().kind() == MetricKind::euclidean) {
      try {
        const int cap = std::min<int>(config.opt_max_steiner, static_cast<int>(row.steiner));
        row.opt = brute_force_opt(instance, cap, config.oracle).count;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::limit) throw;
      }
    }
  } catch (const Error& e) {
    throw Error(e.code(), "instance " + row.instance_hash + ": " + e.what());
  }
  row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::string solution_json(const Instance& instance, const SolutionGraph& g) {
  using nlohmann::json;
  auto point = [](const Point& p) {
    if (!p.coords.empty()) return json(p.coords);
    if (p.index >= 0) return json(p.index);
    return json(nullptr);
  };
  json j;
  j["terminals"] = json::array();
  for (const auto& p : instance.terminals()) j["terminals"].push_back(point(p));
  j["steiner"] = json::array();
  for (const auto& p : g.steiner) j["steiner"].push_back(point(p));
  j["edges"] = json::array();
  for (const auto& e : g.edges) j["edges"].push_back({e.u, e.v});
  j["feasible"] = is_feasible(instance, g);
  return j.dump(2) + "\n";
}

std::string solution_svg(const Instance& instance, const SolutionGraph& g) {
  if (instance.metric().kind() != MetricKind::euclidean || instance.metric().dim() != 2)
    fail(ErrorCode::invalid_argument, "solution_svg: only plane instances can be drawn");
  double lo_x = std::numeric_limits<double>::max(), lo_y = lo_x, hi_x = -lo_x, hi_y = -lo_x;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    const auto& p = point_of(instance, g, static_cast<NodeId>(v));
    if (p.coords.empty()) continue;
    lo_x = std::min(lo_x, p.coords[0]);
    hi_x = std::max(hi_x, p.coords[0]);
    lo_y = std::min(lo_y, p.coords[1]);
    hi_y = std::max(hi_y, p.coords[1]);
  }
  const double scale = 100, margin = 0.5;
  const double w = (hi_x - lo_x + 2 * margin) * scale, h = (hi_y - lo_y + 2 * margin) * scale;
  auto px = [&](const Point& p) { return (p.coords[0] - lo_x + margin) * scale; };
  auto py = [&](const Point& p) { return (hi_y - p.coords[1] + margin) * scale; };
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(w) << "\" height=\"" << fixed(h) << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& e : g.edges) {
    const auto& a = point_of(instance, g, e.u);
    const auto& b = point_of(instance, g, e.v);
    if (a.coords.empty() || b.coords.empty()) continue;
    s << "<line x1=\"" << fixed(px(a)) << "\" y1=\"" << fixed(py(a)) << "\" x2=\"" << fixed(px(b)) << "\" y2=\""
      << fixed(py(b)) << "\" stroke=\"#888\" stroke-width=\"1.5\"/>\n";
  }
  for (const auto& p : g.steiner)
    if (!p.coords.empty())
      s << "<circle cx=\"" << fixed(px(p)) << "\" cy=\"" << fixed(py(p)) << "\" r=\"3\" fill=\"#1f6fd0\"/>\n";
  for (std::size_t t = 0; t < instance.size(); ++t) {
    const auto& p = instance.terminals()[t];
    const bool unstable = instance.is_unstable(static_cast<NodeId>(t));
    s << "<circle cx=\"" << fixed(px(p)) << "\" cy=\"" << fixed(py(p)) << "\" r=\"5\" fill=\""
      << (unstable ? "#d03030" : "black") << "\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols = {
      "report_version", "index",    "instance_hash", "algorithm",        "backend",      "k",
      "terminals",      "steiner",  "tau_star",      "tau",              "opt",          "ratio_vs_taustar",
      "ratio_vs_opt",   "tau_over_opt", "taustar_over_opt", "feasible", "certified",    "heuristic",
      "wall_ms"};
  return cols;
}

std::string report_json(const std::vector<RunRow>& rows, bool with_timing) {
  using nlohmann::json;
  json j;
  j["report_version"] = kReportVersion;
  j["rows"] = json::array();
  for (const auto& r : rows) {
    json o;
    o["index"] = r.index;
    o["instance_hash"] = r.instance_hash;
    o["algorithm"] = r.algorithm;
    o["backend"] = r.backend.empty() ? json(nullptr) : json(r.backend);
    o["k"] = r.k > 0 ? json(r.k) : json(nullptr);
    o["terminals"] = r.terminals;
    o["steiner"] = r.steiner;
    o["cost"] = r.steiner;
    o["tau_star"] = r.tau_star ? json(r.tau_star->get_str()) : json(nullptr);
    o["tau_star_value"] = r.tau_star ? json(r.tau_star->get_d()) : json(nullptr);
    o["tau"] = r.tau ? json(*r.tau) : json(nullptr);
    o["opt"] = r.opt ? json(*r.opt) : json(nullptr);
    o["ratio_vs_taustar"] = opt_json(r.ratio_vs_taustar());
    o["ratio_vs_opt"] = opt_json(r.ratio_vs_opt());
    o["tau_over_opt"] = opt_json(r.tau_over_opt());
    o["taustar_over_opt"] = opt_json(r.taustar_over_opt());
    o["feasible"] = r.feasible;
    o["certified"] = r.certified;
    o["heuristic"] = r.heuristic;
    j["rows"].push_back(std::move(o));
  }
  if (with_timing) {
    j["timing"] = json::array();
    for (const auto& r : rows) j["timing"].push_back({{"index", r.index}, {"wall_ms", r.wall_ms}});
  }
  return j.dump(2) + "\n";
}

std::string report_csv(const std::vector<RunRow>& rows) {
  std::ostringstream s;
  const auto& cols = report_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) s << (i ? "," : "") << cols[i];
  s << "\n";
  auto opt = [](const std::optional<double>& x) { return x ? fixed(*x) : std::string(); };
  for (const auto& r : rows) {
    s << kReportVersion << ',' << r.index << ',' << r.instance_hash << ',' << r.algorithm << ',' << r.backend << ','
      << (r.k > 0 ? std::to_string(r.k) : "") << ',' << r.terminals << ',' << r.steiner << ','
      << (r.tau_star ? r.tau_star->get_str() : "") << ',' << (r.tau ? std::to_string(*r.tau) : "") << ','
      << (r.opt ? std::to_string(*r.opt) : "") << ',' << opt(r.ratio_vs_taustar()) << ',' << opt(r.ratio_vs_opt())
      << ',' << opt(r.tau_over_opt()) << ',' << opt(r.taustar_over_opt()) << ',' << (r.feasible ? 1 : 0) << ','
      << (r.certified ? 1 : 0) << ',' << (r.heuristic ? 1 : 0) << ',' << fixed(r.wall_ms) << "\n";
  }
  return s.str();
}

}  // namespace relaysynth
