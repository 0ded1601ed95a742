#include "gslab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include "gslab/canonical.hpp"
#include "gslab/error.hpp"
#include "gslab/parallel.hpp"

namespace gslab {
namespace {

constexpr double kTolerance = 1e-12;

double row_bound(const std::vector<std::vector<std::pair<Vertex, double>>>& rows) {
  double m = 0.0;
  for (const auto& row : rows)
    for (const auto& [y, v] : row) m = std::max(m, std::abs(v));
  return m;
}

void require_same_graph(const OperatorKernel& a, const OperatorKernel& b) {
  if (!a.graph || !b.graph || (a.graph != b.graph && !(*a.graph == *b.graph)))
    throw InputError("kernels live on different graphs");
}

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

// A pattern around one row vertex: its code, orbits by canonical position,
// and the row-graph vertex sitting at each canonical position (if any).
struct RowPattern {
  std::string code;
  std::vector<Vertex> orbit_of_position;
  std::vector<std::optional<Vertex>> host_of_position;
};

RowPattern intrinsic_pattern(const ColoredGraph& g, Vertex x, int s) {
  auto b = ball(g, x, s);
  RowPattern p;
  p.code = b.code();
  const std::size_t k = b.graph.size();
  p.orbit_of_position.resize(k);
  p.host_of_position.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Vertex v = b.canon.order[i];
    p.host_of_position[i] = b.origin[v];
    p.orbit_of_position[i] = b.canon.position[b.canon.orbit[v]];
  }
  return p;
}

RowPattern ambient_pattern(const AdjacencyOracle& ambient, const Patch& sub, const std::map<SiteId, Vertex>& index,
                           Vertex x, int s) {
  auto b = oracle_ball(ambient, sub.ids[x], s);
  auto canon = canonicalize(b.graph, Vertex{0});
  RowPattern p;
  p.code = canon.code;
  const std::size_t k = b.graph.size();
  p.orbit_of_position.resize(k);
  p.host_of_position.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Vertex v = canon.order[i];
    auto it = index.find(b.ids[v]);
    if (it != index.end()) p.host_of_position[i] = it->second;
    p.orbit_of_position[i] = canon.position[canon.orbit[v]];
  }
  return p;
}

// Canonical rows grouped by code; positions the row cannot see stay empty.
// Returns an error message on the first inconsistency.
std::optional<std::string> collect_rows(const OperatorKernel& kernel, const std::vector<RowPattern>& patterns,
                                        std::map<std::string, std::vector<std::optional<double>>>& table) {
  for (Vertex x = 0; x < patterns.size(); ++x) {
    const auto& p = patterns[x];
    std::map<Vertex, std::size_t> position_of_host;
    for (std::size_t i = 0; i < p.host_of_position.size(); ++i)
      if (p.host_of_position[i]) position_of_host[*p.host_of_position[i]] = i;
    std::vector<std::optional<double>> row(p.host_of_position.size());
    for (std::size_t i = 0; i < row.size(); ++i)
      if (p.host_of_position[i]) row[i] = 0.0;
    for (const auto& [y, v] : kernel.rows[x]) {
      auto it = position_of_host.find(y);
      if (it == position_of_host.end()) {
        if (std::abs(v) > kTolerance)
          return "row " + std::to_string(x) + " has entry at " + std::to_string(y) + " outside its ball";
        continue;
      }
      row[it->second] = v;
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto rep = p.orbit_of_position[i];
      if (row[i] && row[rep] && std::abs(*row[i] - *row[rep]) > kTolerance)
        return "row " + std::to_string(x) + " is not constant on the orbit of canonical position " +
               std::to_string(rep);
    }
    auto [it, inserted] = table.try_emplace(p.code, row);
    if (inserted) continue;
    auto& ref = it->second;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!row[i]) continue;
      if (!ref[i]) {
        ref[i] = row[i];
      } else if (std::abs(*ref[i] - *row[i]) > kTolerance) {
        return "row " + std::to_string(x) + " disagrees with an earlier row of pattern " + to_hex(p.code) +
               " at canonical position " + std::to_string(i);
      }
    }
  }
  return std::nullopt;
}

std::vector<double> evaluate(const PatternFunction& f, const std::string& code) {
  return f(decode_code(code).graph);
}

}  // namespace

double OperatorKernel::at(Vertex x, Vertex y) const {
  const auto& row = rows.at(x);
  auto it = std::lower_bound(row.begin(), row.end(), y, [](const auto& e, Vertex v) { return e.first < v; });
  return it != row.end() && it->first == y ? it->second : 0.0;
}

void validate_rule(const InvariantRule& rule) {
  if (rule.radius < 0) throw InputError("rule radius must be non-negative");
  for (const auto& [code, values] : rule.table) {
    auto decoded = decode_code(code);
    if (!decoded.rooted) throw InputError("rule code " + to_hex(code) + " is not rooted");
    const auto& g = decoded.graph;
    if (values.size() != g.size()) {
      throw InputError("rule entry " + to_hex(code) + " has " + std::to_string(values.size()) + " values for " +
                       std::to_string(g.size()) + " pattern vertices");
    }
    auto canon = canonicalize(g, Vertex{0});
    for (Vertex v = 0; v < g.size(); ++v) {
      if (std::abs(values[v] - values[canon.orbit[v]]) > kTolerance) {
        throw InputError("rule entry " + to_hex(code) + " is not automorphism invariant: positions " +
                         std::to_string(canon.orbit[v]) + " and " + std::to_string(v) +
                         " share an orbit but carry different values");
      }
    }
  }
}

PatternFunction laplacian_function() {
  return [](const ColoredGraph& p) {
    std::vector<double> values(p.size(), 0.0);
    if (p.size() == 0) return values;
    values[0] = static_cast<double>(p.degree(0));
    for (const auto& inc : p.adjacent(0)) values[inc.neighbor] = -1.0;
    return values;
  };
}

PatternFunction random_function(std::uint64_t seed) {
  return [seed](const ColoredGraph& p) {
    auto canon = canonicalize(p, Vertex{0});
    std::uint64_t base = fnv1a(0xcbf29ce484222325ull, &seed, sizeof seed);
    base = fnv1a(base, canon.code.data(), canon.code.size());
    std::vector<double> values(p.size());
    for (Vertex v = 0; v < p.size(); ++v) {
      const std::uint32_t rep = canon.position[canon.orbit[v]];
      std::uint64_t h = fnv1a(base, &rep, sizeof rep);
      h ^= h >> 33;
      h *= 0xff51afd7ed558ccdull;
      h ^= h >> 33;
      values[v] = static_cast<double>(h >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    }
    return values;
  };
}

InvariantRule tabulate_rule(int radius, const PatternFunction& f, std::span<const ColoredGraph> graphs) {
  InvariantRule rule;
  rule.radius = radius;
  for (const auto& g : graphs) {
    std::vector<std::string> codes(g.size());
    parallel_for(g.size(), [&](std::size_t x) { codes[x] = ball(g, static_cast<Vertex>(x), radius).code(); });
    for (auto& code : codes)
      if (!rule.table.count(code)) rule.table.emplace(code, evaluate(f, code));
  }
  validate_rule(rule);
  return rule;
}

InvariantRule tabulate_rule(int radius, const PatternFunction& f, const AdjacencyOracle& ambient,
                            std::span<const SiteId> sites) {
  InvariantRule rule;
  rule.radius = radius;
  std::vector<std::string> codes(sites.size());
  parallel_for(sites.size(), [&](std::size_t i) {
    codes[i] = canonical_code(oracle_ball(ambient, sites[i], radius).graph, 0);
  });
  for (auto& code : codes)
    if (!rule.table.count(code)) rule.table.emplace(code, evaluate(f, code));
  validate_rule(rule);
  return rule;
}

OperatorKernel laplacian(std::shared_ptr<const ColoredGraph> g) {
  OperatorKernel k;
  k.range = 1;
  k.rows.resize(g->size());
  for (Vertex x = 0; x < g->size(); ++x) {
    auto& row = k.rows[x];
    for (const auto& inc : g->adjacent(x)) row.emplace_back(inc.neighbor, -1.0);
    row.emplace_back(x, static_cast<double>(g->degree(x)));
    std::sort(row.begin(), row.end());
  }
  k.bound_m = row_bound(k.rows);
  k.graph = std::move(g);
  return k;
}

OperatorKernel laplacian(const ColoredGraph& g) { return laplacian(std::make_shared<const ColoredGraph>(g)); }

OperatorKernel identity_kernel(std::shared_ptr<const ColoredGraph> g) {
  OperatorKernel k;
  k.range = 0;
  k.rows.resize(g->size());
  for (Vertex x = 0; x < g->size(); ++x) k.rows[x].emplace_back(x, 1.0);
  k.bound_m = g->size() ? 1.0 : 0.0;
  k.graph = std::move(g);
  return k;
}

OperatorKernel kernel_from_rule(std::shared_ptr<const ColoredGraph> g, const InvariantRule& rule) {
  OperatorKernel k;
  k.range = rule.radius;
  k.rows.resize(g->size());
  std::vector<std::string> missing(g->size());
  parallel_for(g->size(), [&](std::size_t xi) {
    const auto x = static_cast<Vertex>(xi);
    auto b = ball(*g, x, rule.radius);
    auto it = rule.table.find(b.code());
    if (it == rule.table.end()) {
      missing[x] = b.code();
      return;
    }
    const auto& values = it->second;
    if (values.size() != b.graph.size()) {
      missing[x] = b.code();
      return;
    }
    auto& row = k.rows[x];
    for (std::size_t i = 0; i < values.size(); ++i)
      if (values[i] != 0.0) row.emplace_back(b.origin[b.canon.order[i]], values[i]);
    std::sort(row.begin(), row.end());
  });
  for (Vertex x = 0; x < g->size(); ++x)
    if (!missing[x].empty())
      throw InputError("rule has no entry for pattern " + to_hex(missing[x]) + " (radius " +
                       std::to_string(rule.radius) + ") at vertex " + std::to_string(x));
  k.bound_m = row_bound(k.rows);
  k.graph = std::move(g);
  return k;
}

OperatorKernel kernel_from_rule(const ColoredGraph& g, const InvariantRule& rule) {
  return kernel_from_rule(std::make_shared<const ColoredGraph>(g), rule);
}

OperatorKernel add(const OperatorKernel& a, const OperatorKernel& b) {
  require_same_graph(a, b);
  OperatorKernel k;
  k.graph = a.graph;
  k.range = std::max(a.range, b.range);
  k.rows.resize(a.size());
  for (Vertex x = 0; x < a.size(); ++x) {
    std::map<Vertex, double> acc;
    for (const auto& [y, v] : a.rows[x]) acc[y] += v;
    for (const auto& [y, v] : b.rows[x]) acc[y] += v;
    for (const auto& [y, v] : acc)
      if (v != 0.0) k.rows[x].emplace_back(y, v);
  }
  k.bound_m = row_bound(k.rows);
  return k;
}

OperatorKernel multiply(const OperatorKernel& a, const OperatorKernel& b) {
  require_same_graph(a, b);
  OperatorKernel k;
  k.graph = a.graph;
  k.range = a.range + b.range;
  k.rows.resize(a.size());
  parallel_for(a.size(), [&](std::size_t x) {
    std::map<Vertex, double> acc;
    for (const auto& [z, av] : a.rows[x])
      for (const auto& [y, bv] : b.rows[z]) acc[y] += av * bv;
    for (const auto& [y, v] : acc)
      if (v != 0.0) k.rows[x].emplace_back(y, v);
  });
  k.bound_m = row_bound(k.rows);
  return k;
}

OperatorKernel adjoint(const OperatorKernel& a) {
  OperatorKernel k;
  k.graph = a.graph;
  k.range = a.range;
  k.rows.resize(a.size());
  for (Vertex x = 0; x < a.size(); ++x)
    for (const auto& [y, v] : a.rows[x]) k.rows[y].emplace_back(x, v);
  k.bound_m = a.bound_m;
  return k;
}

OperatorKernel scale(const OperatorKernel& a, double c) {
  OperatorKernel k = a;
  for (auto& row : k.rows)
    for (auto& e : row) e.second *= c;
  k.bound_m = a.bound_m * std::abs(c);
  return k;
}

OperatorKernel restrict(const InvariantRule& rule, const AdjacencyOracle& ambient, const Patch& sub) {
  std::map<SiteId, Vertex> index;
  for (Vertex i = 0; i < sub.ids.size(); ++i) index.emplace(sub.ids[i], i);
  OperatorKernel k;
  k.range = rule.radius;
  k.rows.resize(sub.ids.size());
  std::vector<std::string> missing(sub.ids.size());
  parallel_for(sub.ids.size(), [&](std::size_t xi) {
    const auto p = ambient_pattern(ambient, sub, index, static_cast<Vertex>(xi), rule.radius);
    auto it = rule.table.find(p.code);
    if (it == rule.table.end() || it->second.size() != p.host_of_position.size()) {
      missing[xi] = p.code;
      return;
    }
    auto& row = k.rows[xi];
    for (std::size_t i = 0; i < it->second.size(); ++i)
      if (p.host_of_position[i] && it->second[i] != 0.0) row.emplace_back(*p.host_of_position[i], it->second[i]);
    std::sort(row.begin(), row.end());
  });
  for (std::size_t x = 0; x < missing.size(); ++x)
    if (!missing[x].empty())
      throw InputError("rule has no entry for ambient pattern " + to_hex(missing[x]) + " at site " +
                       to_string(sub.ids[x]));
  k.bound_m = row_bound(k.rows);
  k.graph = std::make_shared<const ColoredGraph>(sub.graph);
  return k;
}

InvariantRule extract_rule(const ColoredGraph& g, const OperatorKernel& kernel, int s) {
  if (kernel.size() != g.size()) throw InputError("kernel size does not match graph");
  std::vector<RowPattern> patterns(g.size());
  parallel_for(g.size(), [&](std::size_t x) { patterns[x] = intrinsic_pattern(g, static_cast<Vertex>(x), s); });
  std::map<std::string, std::vector<std::optional<double>>> table;
  if (auto err = collect_rows(kernel, patterns, table)) throw InputError("kernel is not pattern invariant: " + *err);
  InvariantRule rule;
  rule.radius = s;
  for (auto& [code, row] : table) {
    std::vector<double> values;
    for (const auto& v : row) values.push_back(v.value_or(0.0));
    rule.table.emplace(code, std::move(values));
  }
  return rule;
}

bool check_pattern_invariance(const ColoredGraph& g, const OperatorKernel& kernel, int s) {
  if (kernel.size() != g.size()) throw InputError("kernel size does not match graph");
  std::vector<RowPattern> patterns(g.size());
  parallel_for(g.size(), [&](std::size_t x) { patterns[x] = intrinsic_pattern(g, static_cast<Vertex>(x), s); });
  std::map<std::string, std::vector<std::optional<double>>> table;
  return !collect_rows(kernel, patterns, table);
}

bool check_pattern_invariance(const AdjacencyOracle& ambient, const Patch& sub, const OperatorKernel& kernel, int s) {
  if (kernel.size() != sub.ids.size()) throw InputError("kernel size does not match patch");
  std::map<SiteId, Vertex> index;
  for (Vertex i = 0; i < sub.ids.size(); ++i) index.emplace(sub.ids[i], i);
  std::vector<RowPattern> patterns(sub.ids.size());
  parallel_for(sub.ids.size(),
               [&](std::size_t x) { patterns[x] = ambient_pattern(ambient, sub, index, static_cast<Vertex>(x), s); });
  std::map<std::string, std::vector<std::optional<double>>> table;
  return !collect_rows(kernel, patterns, table);
}

}  // namespace gslab
