#include "gslab/colored_graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "gslab/error.hpp"

namespace gslab {

ColoredGraph::ColoredGraph(int degree_bound, int x_alphabet, int s_alphabet,
                           std::vector<Color> vertex_colors, std::vector<Edge> edges)
    : degree_bound_(degree_bound),
      x_alphabet_(x_alphabet),
      s_alphabet_(s_alphabet),
      vertex_colors_(std::move(vertex_colors)),
      edges_(std::move(edges)) {
  const std::size_t n = vertex_colors_.size();
  for (auto& e : edges_) {
    if (e.u > e.v) {
      std::swap(e.u, e.v);
      std::swap(e.color_uv, e.color_vu);
    }
    if (e.v >= n) {
      throw InputError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       ") references a vertex outside 0.." + std::to_string(n) + ")");
    }
  }
  std::sort(edges_.begin(), edges_.end());

  std::vector<std::size_t> deg(n, 0);
  for (const auto& e : edges_) {
    ++deg[e.u];
    if (e.u != e.v) ++deg[e.v];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t x = 0; x < n; ++x) offsets_[x + 1] = offsets_[x] + deg[x];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[fill[e.u]++] = {e.v, e.color_uv, e.color_vu};
    if (e.u != e.v) adjacency_[fill[e.v]++] = {e.u, e.color_vu, e.color_uv};
  }
  for (std::size_t x = 0; x < n; ++x) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[x]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[x + 1]));
  }
}

ColoredGraph ColoredGraph::uncolored(std::size_t n, int degree_bound,
                                     std::span<const std::pair<Vertex, Vertex>> edges) {
  std::vector<Edge> list;
  list.reserve(edges.size());
  for (auto [u, v] : edges) list.push_back({u, v, 0, 0});
  return ColoredGraph(degree_bound, 1, 1, std::vector<Color>(n, 0), std::move(list));
}

std::size_t ColoredGraph::max_degree() const {
  std::size_t best = 0;
  for (Vertex x = 0; x < size(); ++x) best = std::max(best, degree(x));
  return best;
}

std::optional<Incidence> ColoredGraph::find_edge(Vertex x, Vertex y) const {
  auto adj = adjacent(x);
  auto it = std::lower_bound(adj.begin(), adj.end(), y,
                             [](const Incidence& inc, Vertex key) { return inc.neighbor < key; });
  if (it != adj.end() && it->neighbor == y) return *it;
  return std::nullopt;
}

void ColoredGraph::check_vertex(Vertex x) const {
  if (x >= size()) {
    throw InputError("vertex " + std::to_string(x) + " out of range (n=" +
                     std::to_string(size()) + ")");
  }
}

bool operator==(const ColoredGraph& a, const ColoredGraph& b) {
  return a.degree_bound_ == b.degree_bound_ && a.x_alphabet_ == b.x_alphabet_ &&
         a.s_alphabet_ == b.s_alphabet_ && a.vertex_colors_ == b.vertex_colors_ &&
         a.edges_ == b.edges_;
}

std::vector<std::string> validate(const ColoredGraph& g) {
  std::vector<std::string> out;
  for (Vertex x = 0; x < g.size(); ++x) {
    if (g.color(x) >= static_cast<Color>(g.x_alphabet())) {
      out.push_back("vertex color " + std::to_string(g.color(x)) + " at " + std::to_string(x) +
                    " outside alphabet of size " + std::to_string(g.x_alphabet()));
    }
  }
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (e.u == e.v) out.push_back("loop at " + std::to_string(e.u));
    if (i > 0 && edges[i - 1].u == e.u && edges[i - 1].v == e.v) {
      out.push_back("duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    }
    for (Color c : {e.color_uv, e.color_vu}) {
      if (c >= static_cast<Color>(g.s_alphabet())) {
        out.push_back("edge color " + std::to_string(c) + " on (" + std::to_string(e.u) + "," +
                      std::to_string(e.v) + ") outside alphabet of size " +
                      std::to_string(g.s_alphabet()));
      }
    }
  }
  for (Vertex x = 0; x < g.size(); ++x) {
    if (g.degree(x) > static_cast<std::size_t>(g.degree_bound())) {
      out.push_back("degree " + std::to_string(g.degree(x)) + " > " +
                    std::to_string(g.degree_bound()) + " at " + std::to_string(x));
    }
  }
  return out;
}

void require_valid(const ColoredGraph& g) {
  auto violations = validate(g);
  if (violations.empty()) return;
  std::string msg = "invalid graph:";
  for (const auto& v : violations) msg += " " + v + ";";
  throw InputError(msg);
}

std::vector<int> bfs_distances(const ColoredGraph& g, Vertex source, std::optional<int> max_radius) {
  g.check_vertex(source);
  std::vector<int> dist(g.size(), -1);
  std::vector<Vertex> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex x = queue[head];
    if (max_radius && dist[x] >= *max_radius) continue;
    for (const auto& inc : g.adjacent(x)) {
      if (dist[inc.neighbor] < 0) {
        dist[inc.neighbor] = dist[x] + 1;
        queue.push_back(inc.neighbor);
      }
    }
  }
  return dist;
}

std::vector<std::vector<Vertex>> connected_components(const ColoredGraph& g) {
  std::vector<int> comp(g.size(), -1);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < g.size(); ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    std::vector<Vertex> members{s};
    comp[s] = id;
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (const auto& inc : g.adjacent(members[head])) {
        if (comp[inc.neighbor] < 0) {
          comp[inc.neighbor] = id;
          members.push_back(inc.neighbor);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

bool is_connected(const ColoredGraph& g) {
  if (g.size() == 0) return true;
  auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

ColoredGraph induced_subgraph(const ColoredGraph& g, std::span<const Vertex> vertices) {
  constexpr Vertex kAbsent = ~Vertex{0};
  std::vector<Vertex> local(g.size(), kAbsent);
  std::vector<Color> colors;
  colors.reserve(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    g.check_vertex(vertices[i]);
    local[vertices[i]] = static_cast<Vertex>(i);
    colors.push_back(g.color(vertices[i]));
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (const auto& inc : g.adjacent(vertices[i])) {
      Vertex j = local[inc.neighbor];
      if (j != kAbsent && static_cast<Vertex>(i) < j) {
        edges.push_back({static_cast<Vertex>(i), j, inc.out_color, inc.in_color});
      }
    }
  }
  return ColoredGraph(g.degree_bound(), g.x_alphabet(), g.s_alphabet(), std::move(colors),
                      std::move(edges));
}

ColoredGraph disjoint_copies(const ColoredGraph& g, std::size_t copies) {
  const std::size_t n = g.size();
  std::vector<Color> colors;
  colors.reserve(n * copies);
  std::vector<Edge> edges;
  edges.reserve(g.edge_count() * copies);
  for (std::size_t c = 0; c < copies; ++c) {
    const auto offset = static_cast<Vertex>(c * n);
    colors.insert(colors.end(), g.vertex_colors().begin(), g.vertex_colors().end());
    for (auto e : g.edges()) {
      e.u += offset;
      e.v += offset;
      edges.push_back(e);
    }
  }
  return ColoredGraph(g.degree_bound(), g.x_alphabet(), g.s_alphabet(), std::move(colors),
                      std::move(edges));
}

ColoredGraph disjoint_union(const ColoredGraph& a, const ColoredGraph& b) {
  std::vector<Color> colors = a.vertex_colors();
  colors.insert(colors.end(), b.vertex_colors().begin(), b.vertex_colors().end());
  std::vector<Edge> edges = a.edges();
  const auto offset = static_cast<Vertex>(a.size());
  for (auto e : b.edges()) {
    e.u += offset;
    e.v += offset;
    edges.push_back(e);
  }
  return ColoredGraph(std::max(a.degree_bound(), b.degree_bound()),
                      std::max(a.x_alphabet(), b.x_alphabet()),
                      std::max(a.s_alphabet(), b.s_alphabet()), std::move(colors),
                      std::move(edges));
}

ColoredGraph permute(const ColoredGraph& h, std::span<const Vertex> sigma) {
  if (sigma.size() != h.size()) throw InputError("permutation size does not match graph");
  std::vector<bool> seen(h.size(), false);
  for (Vertex s : sigma) {
    if (s >= h.size() || seen[s]) throw InputError("sigma is not a permutation");
    seen[s] = true;
  }
  std::vector<Color> colors(h.size());
  for (Vertex x = 0; x < h.size(); ++x) colors[sigma[x]] = h.color(x);
  std::vector<Edge> edges;
  edges.reserve(h.edge_count());
  for (const auto& e : h.edges()) edges.push_back({sigma[e.u], sigma[e.v], e.color_uv, e.color_vu});
  return ColoredGraph(h.degree_bound(), h.x_alphabet(), h.s_alphabet(), std::move(colors),
                      std::move(edges));
}

ColoredGraph remove_edges(const ColoredGraph& g, std::span<const std::pair<Vertex, Vertex>> removed) {
  std::vector<std::pair<Vertex, Vertex>> keys;
  keys.reserve(removed.size());
  for (auto [u, v] : removed) keys.emplace_back(std::min(u, v), std::max(u, v));
  std::sort(keys.begin(), keys.end());
  std::vector<Edge> kept;
  kept.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    if (!std::binary_search(keys.begin(), keys.end(), std::pair{e.u, e.v})) kept.push_back(e);
  }
  return ColoredGraph(g.degree_bound(), g.x_alphabet(), g.s_alphabet(), g.vertex_colors(),
                      std::move(kept));
}

ColoredGraph recolor(const ColoredGraph& g, std::vector<Color> colors, int x_alphabet) {
  if (colors.size() != g.size()) throw InputError("recolor: color vector size mismatch");
  return ColoredGraph(g.degree_bound(), x_alphabet, g.s_alphabet(), std::move(colors), g.edges());
}

}  // namespace gslab
