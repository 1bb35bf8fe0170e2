#include "relaysynth/instance_io.hpp"

#include <gmpxx.h>

#include <json.hpp>

namespace relaysynth {

using nlohmann::json;

namespace {

double matrix_entry(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      mpq_class q(v.get<std::string>());
      q.canonicalize();
      return q.get_d();
    } catch (const std::invalid_argument&) {
      fail(ErrorCode::parse, "matrix entry is not a rational: " + v.get<std::string>());
    }
  }
  fail(ErrorCode::parse, "matrix entry must be a number or a \"p/q\" string");
}

MetricSpace parse_metric(const json& m) {
  if (!m.is_object()) fail(ErrorCode::parse, "\"metric\" must be an object");
  const auto type = m.value("type", std::string{});
  std::optional<int> delta;
  if (m.contains("delta") && !m["delta"].is_null()) delta = m["delta"].get<int>();
  if (type == "euclidean") {
    if (!m.contains("dim")) fail(ErrorCode::parse, "euclidean metric needs \"dim\"");
    return MetricSpace::euclidean(m["dim"].get<int>(), delta);
  }
  if (type == "finite") {
    if (!delta) fail(ErrorCode::invalid_argument, "delta required for finite metrics");
    if (!m.contains("matrix") || !m["matrix"].is_array()) fail(ErrorCode::parse, "finite metric needs \"matrix\"");
    std::vector<std::vector<double>> matrix;
    for (const auto& row : m["matrix"]) {
      if (!row.is_array()) fail(ErrorCode::parse, "matrix rows must be arrays");
      std::vector<double> r;
      for (const auto& v : row) r.push_back(matrix_entry(v));
      matrix.push_back(std::move(r));
    }
    return MetricSpace::finite(std::move(matrix), *delta);
  }
  fail(ErrorCode::parse, "unknown metric type \"" + type + "\"");
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::parse, std::string("malformed JSON: ") + e.what());
  }
  try {
    if (!doc.is_object()) fail(ErrorCode::parse, "instance must be a JSON object");
    if (!doc.contains("metric")) fail(ErrorCode::parse, "instance needs \"metric\"");
    MetricSpace metric = parse_metric(doc["metric"]);

    std::vector<Point> terminals;
    const json terms = doc.value("terminals", json(nullptr));
    if (terms.is_null()) {
      if (metric.kind() != MetricKind::finite) fail(ErrorCode::parse, "euclidean instances need a terminal list");
      for (std::size_t i = 0; i < metric.size(); ++i) terminals.push_back(Point::node(static_cast<int>(i)));
    } else if (terms.is_array()) {
      for (const auto& t : terms) {
        if (metric.kind() == MetricKind::euclidean) {
          if (!t.is_array()) fail(ErrorCode::parse, "euclidean terminals must be coordinate arrays");
          terminals.push_back(Point::at(t.get<std::vector<double>>()));
        } else {
          if (!t.is_number_integer()) fail(ErrorCode::parse, "finite-metric terminals must be node indices");
          terminals.push_back(Point::node(t.get<int>()));
        }
      }
    } else {
      fail(ErrorCode::parse, "\"terminals\" must be an array or null");
    }

    std::vector<NodeId> unstable = doc.value("unstable", std::vector<NodeId>{});
    const int default_demand = doc.value("default_demand", 0);
    if (default_demand < 0 || default_demand > 2) fail(ErrorCode::invalid_argument, "default_demand must be 0, 1 or 2");

    std::vector<Demand> demands;
    const auto n = static_cast<NodeId>(terminals.size());
    if (default_demand > 0)
      for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) demands.push_back({i, j, default_demand});
    for (const auto& d : doc.value("demands", json::array())) {
      if (!d.is_array() || d.size() != 3) fail(ErrorCode::parse, "demands must be [i,j,r] triples");
      demands.push_back({d[0].get<NodeId>(), d[1].get<NodeId>(), d[2].get<int>()});
    }
    return Instance(std::move(metric), std::move(terminals), std::move(unstable), demands);
  } catch (const json::exception& e) {
    fail(ErrorCode::parse, std::string("bad instance field: ") + e.what());
  }
}

std::string serialize_instance(const Instance& instance) {
  json doc;
  const auto& metric = instance.metric();
  if (metric.kind() == MetricKind::euclidean) {
    doc["metric"] = {{"type", "euclidean"}, {"dim", metric.dim()}, {"delta", metric.delta()}};
  } else {
    doc["metric"] = {{"type", "finite"}, {"matrix", metric.matrix()}, {"delta", metric.delta()}};
  }
  json terms = json::array();
  for (const auto& p : instance.terminals()) {
    if (metric.kind() == MetricKind::euclidean)
      terms.push_back(p.coords);
    else
      terms.push_back(p.index);
  }
  doc["terminals"] = terms;
  doc["unstable"] = instance.unstable();
  json demands = json::array();
  for (const auto& d : instance.demands()) demands.push_back({d.u, d.v, d.r});
  doc["demands"] = demands;
  doc["default_demand"] = 0;
  return doc.dump(2) + "\n";
}

}  // namespace relaysynth
