#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "gslab/colored_graph.hpp"

namespace brute {

using gslab::Color;
using gslab::ColoredGraph;
using gslab::Edge;
using gslab::Vertex;

/// Dense colored adjacency: entry [x][y] = color of x -> y plus one, 0 for
/// no edge.
inline std::vector<std::vector<int>> dense(const ColoredGraph& g) {
  std::vector<std::vector<int>> m(g.size(), std::vector<int>(g.size(), 0));
  for (const auto& e : g.edges()) {
    m[e.u][e.v] = static_cast<int>(e.color_uv) + 1;
    m[e.v][e.u] = static_cast<int>(e.color_vu) + 1;
  }
  return m;
}

/// True iff pi (vertex x of a goes to pi[x] of b) is a colored isomorphism.
inline bool is_isomorphism(const ColoredGraph& a, const ColoredGraph& b, const std::vector<Vertex>& pi) {
  auto ma = dense(a), mb = dense(b);
  for (Vertex x = 0; x < a.size(); ++x) {
    if (a.color(x) != b.color(pi[x])) return false;
    for (Vertex y = 0; y < a.size(); ++y)
      if (ma[x][y] != mb[pi[x]][pi[y]]) return false;
  }
  return true;
}

/// All colored isomorphisms a -> b fixing root (when given).
inline std::vector<std::vector<Vertex>> isomorphisms(const ColoredGraph& a, const ColoredGraph& b,
                                                    std::optional<Vertex> root_a = std::nullopt,
                                                    std::optional<Vertex> root_b = std::nullopt) {
  std::vector<std::vector<Vertex>> out;
  if (a.size() != b.size() || a.edge_count() != b.edge_count()) return out;
  std::vector<Vertex> pi(a.size());
  std::iota(pi.begin(), pi.end(), 0);
  do {
    if (root_a && pi[*root_a] != *root_b) continue;
    if (is_isomorphism(a, b, pi)) out.push_back(pi);
  } while (std::next_permutation(pi.begin(), pi.end()));
  return out;
}

inline ColoredGraph random_graph(std::mt19937_64& rng, std::size_t n, int x_alpha, int s_alpha, double p,
                                 int d = 8) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Color> colors(n);
  for (auto& c : colors) c = static_cast<Color>(rng() % static_cast<unsigned>(x_alpha));
  std::vector<Edge> edges;
  std::vector<int> deg(n, 0);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng) < p && deg[u] < d && deg[v] < d) {
        ++deg[u];
        ++deg[v];
        edges.push_back({u, v, static_cast<Color>(rng() % static_cast<unsigned>(s_alpha)),
                         static_cast<Color>(rng() % static_cast<unsigned>(s_alpha))});
      }
  return ColoredGraph(d, x_alpha, s_alpha, colors, edges);
}

inline ColoredGraph random_connected_graph(std::mt19937_64& rng, std::size_t n, int x_alpha, int s_alpha, double p,
                                           int d = 8) {
  while (true) {
    auto g = random_graph(rng, n, x_alpha, s_alpha, p, d);
    if (gslab::is_connected(g)) return g;
  }
}

inline std::vector<Vertex> random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<Vertex> pi(n);
  std::iota(pi.begin(), pi.end(), 0);
  std::shuffle(pi.begin(), pi.end(), rng);
  return pi;
}

/// Fraction of vertices whose stars differ (literal comparison, dense).
inline double delta(const ColoredGraph& g, const ColoredGraph& h) {
  auto mg = dense(g), mh = dense(h);
  std::size_t bad = 0;
  for (Vertex y = 0; y < g.size(); ++y) {
    bool same = g.color(y) == h.color(y);
    for (Vertex z = 0; z < g.size() && same; ++z) {
      same = mg[y][z] == mh[y][z] && mg[z][y] == mh[z][y];
      if (same && mg[y][z]) same = g.color(z) == h.color(z);
    }
    if (!same) ++bad;
  }
  return g.size() ? static_cast<double>(bad) / static_cast<double>(g.size()) : 0.0;
}

/// min over all permutations of delta(g, h^sigma).
inline double delta_s(const ColoredGraph& g, const ColoredGraph& h) {
  std::vector<Vertex> pi(g.size());
  std::iota(pi.begin(), pi.end(), 0);
  double best = 1.0;
  do {
    best = std::min(best, delta(g, gslab::permute(h, pi)));
  } while (std::next_permutation(pi.begin(), pi.end()));
  return best;
}

}  // namespace brute
