#include "gslab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gslab/canonical.hpp"
#include "gslab/error.hpp"

namespace gslab {
namespace {

template <typename T>
T field(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string(what) + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string(what) + ": field '" + key + "': " + e.what());
  }
}

ConnectingRef ref_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw InputError("self-similar spec: connecting reference must be [copy, index]");
  return {j[0].get<std::size_t>(), j[1].get<std::size_t>()};
}

}  // namespace

Json graph_to_json(const ColoredGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v, e.color_uv, e.color_vu});
  return Json{{"n", g.size()},
              {"d", g.degree_bound()},
              {"x_alphabet", g.x_alphabet()},
              {"s_alphabet", g.s_alphabet()},
              {"colors", g.vertex_colors()},
              {"edges", edges}};
}

ColoredGraph graph_from_json(const Json& j) {
  const auto n = field<std::size_t>(j, "n", "graph");
  const auto d = field<int>(j, "d", "graph");
  const int x = j.value("x_alphabet", 1);
  const int s = j.value("s_alphabet", 1);
  std::vector<Color> colors(n, 0);
  if (j.contains("colors")) {
    colors = field<std::vector<Color>>(j, "colors", "graph");
    if (colors.size() != n) throw InputError("graph: colors has " + std::to_string(colors.size()) + " entries, n = " + std::to_string(n));
  }
  std::vector<Edge> edges;
  for (const auto& e : field<Json>(j, "edges", "graph")) {
    if (!e.is_array() || (e.size() != 2 && e.size() != 4)) throw InputError("graph: edge must be [u, v] or [u, v, c_uv, c_vu]");
    Edge edge{e[0].get<Vertex>(), e[1].get<Vertex>(), 0, 0};
    if (e.size() == 4) {
      edge.color_uv = e[2].get<Color>();
      edge.color_vu = e[3].get<Color>();
    }
    edges.push_back(edge);
  }
  ColoredGraph g(d, x, s, std::move(colors), std::move(edges));
  require_valid(g);
  return g;
}

Json rule_to_json(const InvariantRule& rule) {
  Json table = Json::object();
  for (const auto& [code, values] : rule.table) table[to_hex(code)] = values;
  return Json{{"radius", rule.radius}, {"table", table}};
}

InvariantRule rule_from_json(const Json& j) {
  InvariantRule rule;
  rule.radius = field<int>(j, "radius", "rule");
  const auto table = field<Json>(j, "table", "rule");
  if (!table.is_object()) throw InputError("rule: table must be an object");
  for (const auto& [hex, values] : table.items()) {
    try {
      rule.table.emplace(from_hex(hex), values.get<std::vector<double>>());
    } catch (const nlohmann::json::exception& e) {
      throw InputError("rule: entry " + hex + ": " + e.what());
    }
  }
  validate_rule(rule);
  return rule;
}

Json certificate_to_json(const DecompositionCertificate& cert) {
  Json removed = Json::array();
  for (const auto& [u, v] : cert.removed_edges) removed.push_back({u, v});
  return Json{{"epsilon", cert.epsilon},
              {"removed_edges", removed},
              {"components", cert.components},
              {"K", cert.K},
              {"edges_removed_fraction", cert.edges_removed_fraction},
              {"edge_count", cert.edge_count},
              {"boundary_vertices", cert.boundary_vertices},
              {"vertex_fraction", cert.vertex_fraction},
              {"max_search_radius", cert.max_search_radius}};
}

Json spec_to_json(const SelfSimilarSpec& spec) {
  Json rules = Json::array();
  for (const auto& rule : spec.level_rules) {
    Json edges = Json::array(), next = Json::array();
    for (const auto& [a, b] : rule.edges) edges.push_back({{a.copy, a.index}, {b.copy, b.index}});
    for (const auto& r : rule.next_connecting) next.push_back({r.copy, r.index});
    rules.push_back({{"edges", edges}, {"next_connecting", next}});
  }
  return Json{{"g1", graph_to_json(spec.g1)}, {"s1", spec.s1}, {"k", spec.k}, {"d", spec.d}, {"level_rules", rules}};
}

SelfSimilarSpec spec_from_json(const Json& j) {
  SelfSimilarSpec spec;
  spec.g1 = graph_from_json(field<Json>(j, "g1", "self-similar spec"));
  spec.s1 = field<std::vector<Vertex>>(j, "s1", "self-similar spec");
  spec.k = field<std::size_t>(j, "k", "self-similar spec");
  spec.d = field<int>(j, "d", "self-similar spec");
  for (const auto& r : field<Json>(j, "level_rules", "self-similar spec")) {
    LevelRule rule;
    for (const auto& e : field<Json>(r, "edges", "level rule")) {
      if (!e.is_array() || e.size() != 2) throw InputError("level rule: edge must be [[copy, index], [copy, index]]");
      rule.edges.emplace_back(ref_from_json(e[0]), ref_from_json(e[1]));
    }
    for (const auto& c : field<Json>(r, "next_connecting", "level rule")) rule.next_connecting.push_back(ref_from_json(c));
    spec.level_rules.push_back(std::move(rule));
  }
  return spec;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw InputError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw std::logic_error("csv row width does not match header");
  rows_.push_back(std::move(cells));
  return *this;
}

std::string CsvTable::str() const {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out.str();
}

}  // namespace gslab
