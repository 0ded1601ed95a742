#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gslab/colored_graph.hpp"
#include "gslab/oracle.hpp"

namespace gslab {

ColoredGraph path_graph(std::size_t n);
ColoredGraph cycle_graph(std::size_t n);
/// n x n grid, vertex (i, j) is i*n + j.
ColoredGraph grid2d(std::size_t n);
/// n x n x n grid, vertex (i, j, k) is (i*n + j)*n + k.
ColoredGraph grid3d(std::size_t n);

/// Uniform simple d-regular graph on n vertices via the configuration
/// model with rejection. Deterministic for a given seed.
ColoredGraph random_regular(std::size_t n, int degree, std::uint64_t seed);

/// Box {0..n-1}^dim in the lattice oracle, ids in lexicographic order.
Patch lattice_box(int dim, std::int64_t n);

/// Boxes {0..n-1}^2 (side 2) or {0..n-1}^3 (side 3) of the glued lattice,
/// with the shared origin at the box corner. Only the origin touches the
/// other side. Ids in lexicographic order.
std::vector<Patch> folner_boxes(const AdjacencyOracle& glued, int side, std::span<const std::int64_t> sizes);

/// Reference to the index-th connecting vertex of a copy in the k-fold
/// disjoint union of G_n (copy 0 is G_n itself).
struct ConnectingRef {
  std::size_t copy = 0;
  std::size_t index = 0;
};

/// How G_{n+1} is formed from k copies of G_n: inter-copy edges between
/// connecting vertices, and the ordered connecting set S_{n+1}.
struct LevelRule {
  std::vector<std::pair<ConnectingRef, ConnectingRef>> edges;
  std::vector<ConnectingRef> next_connecting;
};

/// Self-similar construction. level_rules[i] builds level i+2 from level
/// i+1; when fewer rules than levels are given the last rule is reused.
struct SelfSimilarSpec {
  ColoredGraph g1;
  std::vector<Vertex> s1;
  std::size_t k = 2;
  int d = 2;
  std::vector<LevelRule> level_rules;
};

struct SelfSimilarLevel {
  ColoredGraph graph;
  std::vector<Vertex> connecting;
};

/// Levels 1..levels. G_n occupies vertices 0..|V(G_n)|-1 of every later
/// level. Throws InputError when a rule breaks the degree bound, refers to
/// a missing copy or connecting vertex, picks S_{n+1} inside G_n, or leaves
/// the graph disconnected.
std::vector<SelfSimilarLevel> self_similar_levels(const SelfSimilarSpec& spec, int levels);
SelfSimilarLevel self_similar(const SelfSimilarSpec& spec, int levels);

/// Shipped default: g1 = P_4, S_1 = {0, 3}, k = 3, d = 2. Each level joins
/// copy 0's first connecting vertex to copy 1's first and copy 0's second to
/// copy 2's first, then keeps the free ends (second connecting vertex of
/// copies 1 and 2). G_n is a path on 4*3^(n-1) vertices with |S_n| = 2.
SelfSimilarSpec default_chain_spec();

}  // namespace gslab
