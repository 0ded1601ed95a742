#include "gslab/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "gslab/error.hpp"

namespace gslab {
namespace {

void require_positive(std::size_t n, const char* what) {
  if (n == 0) throw InputError(std::string(what) + ": n must be >= 1");
}

}  // namespace

ColoredGraph path_graph(std::size_t n) {
  require_positive(n, "path");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return ColoredGraph::uncolored(n, 2, edges);
}

ColoredGraph cycle_graph(std::size_t n) {
  if (n < 3) throw InputError("cycle: n must be >= 3 for a simple cycle");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex i = 0; i < n; ++i) edges.emplace_back(i, static_cast<Vertex>((i + 1) % n));
  return ColoredGraph::uncolored(n, 2, edges);
}

ColoredGraph grid2d(std::size_t n) {
  require_positive(n, "grid2d");
  std::vector<std::pair<Vertex, Vertex>> edges;
  auto id = [n](std::size_t i, std::size_t j) { return static_cast<Vertex>(i * n + j); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i + 1 < n) edges.emplace_back(id(i, j), id(i + 1, j));
      if (j + 1 < n) edges.emplace_back(id(i, j), id(i, j + 1));
    }
  return ColoredGraph::uncolored(n * n, 4, edges);
}

ColoredGraph grid3d(std::size_t n) {
  require_positive(n, "grid3d");
  std::vector<std::pair<Vertex, Vertex>> edges;
  auto id = [n](std::size_t i, std::size_t j, std::size_t k) { return static_cast<Vertex>((i * n + j) * n + k); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (i + 1 < n) edges.emplace_back(id(i, j, k), id(i + 1, j, k));
        if (j + 1 < n) edges.emplace_back(id(i, j, k), id(i, j + 1, k));
        if (k + 1 < n) edges.emplace_back(id(i, j, k), id(i, j, k + 1));
      }
  return ColoredGraph::uncolored(n * n * n, 6, edges);
}

ColoredGraph random_regular(std::size_t n, int degree, std::uint64_t seed) {
  if (degree < 0 || (n * static_cast<std::size_t>(degree)) % 2 != 0 || static_cast<std::size_t>(degree) >= n)
    throw InputError("random_regular: need n*d even and d < n");
  std::mt19937_64 rng(seed);
  std::vector<Vertex> stubs;
  for (Vertex v = 0; v < n; ++v)
    for (int i = 0; i < degree; ++i) stubs.push_back(v);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    // Fisher-Yates with an explicit modulus so the sequence is stable
    // across standard library implementations.
    for (std::size_t i = stubs.size(); i > 1; --i) std::swap(stubs[i - 1], stubs[rng() % i]);
    std::set<std::pair<Vertex, Vertex>> seen;
    bool simple = true;
    for (std::size_t i = 0; i < stubs.size() && simple; i += 2) {
      auto a = std::min(stubs[i], stubs[i + 1]), b = std::max(stubs[i], stubs[i + 1]);
      simple = a != b && seen.emplace(a, b).second;
    }
    if (!simple) continue;
    std::vector<std::pair<Vertex, Vertex>> edges(seen.begin(), seen.end());
    return ColoredGraph::uncolored(n, degree, edges);
  }
  throw InputError("random_regular: no simple pairing found");
}

Patch lattice_box(int dim, std::int64_t n) {
  if (n < 1) throw InputError("lattice_box: n must be >= 1");
  std::vector<SiteId> ids;
  std::vector<std::int64_t> c(static_cast<std::size_t>(dim), 0);
  while (true) {
    ids.push_back(SiteId{0, c});
    int axis = dim - 1;
    while (axis >= 0 && ++c[axis] == n) c[axis--] = 0;
    if (axis < 0) break;
  }
  return materialize(lattice_oracle(dim), std::move(ids));
}

std::vector<Patch> folner_boxes(const AdjacencyOracle& glued, int side, std::span<const std::int64_t> sizes) {
  if (side != 2 && side != 3) throw InputError("folner_boxes: side must be 2 or 3");
  std::vector<Patch> out;
  for (auto n : sizes) {
    if (n < 1) throw InputError("folner_boxes: sizes must be >= 1");
    std::vector<SiteId> ids;
    const std::int64_t zmax = side == 2 ? 1 : n;
    for (std::int64_t x = 0; x < n; ++x)
      for (std::int64_t y = 0; y < n; ++y)
        for (std::int64_t z = 0; z < zmax; ++z) ids.push_back(glued_site(side, x, y, z));
    std::sort(ids.begin(), ids.end());
    out.push_back(materialize(glued, std::move(ids)));
  }
  return out;
}

std::vector<SelfSimilarLevel> self_similar_levels(const SelfSimilarSpec& spec, int levels) {
  if (levels < 1) throw InputError("self_similar: levels must be >= 1");
  if (spec.k < 1) throw InputError("self_similar: k must be >= 1");
  if (!is_connected(spec.g1)) throw InputError("self_similar: g1 must be connected");
  for (Vertex s : spec.s1) spec.g1.check_vertex(s);
  if (spec.g1.max_degree() > static_cast<std::size_t>(spec.d))
    throw InputError("self_similar: g1 violates degree bound");
  if (levels > 1 && spec.level_rules.empty()) throw InputError("self_similar: no level rules");

  std::vector<SelfSimilarLevel> out;
  out.push_back({ColoredGraph(spec.d, spec.g1.x_alphabet(), spec.g1.s_alphabet(), spec.g1.vertex_colors(),
                              spec.g1.edges()),
                 spec.s1});
  for (int level = 2; level <= levels; ++level) {
    const auto& prev = out.back();
    const auto& rule = spec.level_rules[std::min<std::size_t>(level - 2, spec.level_rules.size() - 1)];
    const std::size_t n = prev.graph.size();
    auto resolve = [&](const ConnectingRef& ref) -> Vertex {
      if (ref.copy >= spec.k || ref.index >= prev.connecting.size()) {
        throw InputError("self_similar: level " + std::to_string(level) + " refers to copy " +
                         std::to_string(ref.copy) + " connecting index " + std::to_string(ref.index) +
                         " which does not exist");
      }
      return static_cast<Vertex>(ref.copy * n + prev.connecting[ref.index]);
    };
    auto base = disjoint_copies(prev.graph, spec.k);
    std::vector<Edge> edges = base.edges();
    for (const auto& [a, b] : rule.edges) edges.push_back({resolve(a), resolve(b), 0, 0});
    std::vector<Vertex> next;
    for (const auto& ref : rule.next_connecting) {
      if (ref.copy == 0) {
        throw InputError("self_similar: level " + std::to_string(level) +
                         " picks a connecting vertex inside the previous level");
      }
      next.push_back(resolve(ref));
    }
    ColoredGraph g(spec.d, base.x_alphabet(), base.s_alphabet(), base.vertex_colors(), std::move(edges));
    auto violations = validate(g);
    if (!violations.empty())
      throw InputError("self_similar: level " + std::to_string(level) + ": " + violations.front());
    if (!is_connected(g)) throw InputError("self_similar: level " + std::to_string(level) + " is disconnected");
    out.push_back({std::move(g), std::move(next)});
  }
  return out;
}

SelfSimilarLevel self_similar(const SelfSimilarSpec& spec, int levels) {
  return std::move(self_similar_levels(spec, levels).back());
}

SelfSimilarSpec default_chain_spec() {
  SelfSimilarSpec spec;
  spec.g1 = path_graph(4);
  spec.s1 = {0, 3};
  spec.k = 3;
  spec.d = 2;
  LevelRule rule;
  rule.edges = {{{0, 0}, {1, 0}}, {{0, 1}, {2, 0}}};
  rule.next_connecting = {{1, 1}, {2, 1}};
  spec.level_rules = {rule};
  return spec;
}

}  // namespace gslab
