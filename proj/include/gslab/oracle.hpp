#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gslab/colored_graph.hpp"

namespace gslab {

/// Structured vertex identifier for (possibly infinite) ambient graphs: a
/// tag naming the vertex family plus integer coordinates.
struct SiteId {
  std::int32_t tag = 0;
  std::vector<std::int64_t> coords;

  friend bool operator==(const SiteId&, const SiteId&) = default;
  friend auto operator<=>(const SiteId&, const SiteId&) = default;
};

/// "tag:c0,c1,..." e.g. "2:1,0".
std::string to_string(const SiteId& id);
SiteId parse_site(const std::string& text);

struct SiteIncidence {
  SiteId neighbor;
  Color out_color = 0;
  Color in_color = 0;
};

/// Lazily evaluated ambient graph. All members are pure functions of the
/// id; `neighbors` returns the same list (in the same order) on every call.
struct AdjacencyOracle {
  std::string name;
  int degree_bound = 0;
  int x_alphabet = 1;
  int s_alphabet = 1;
  std::function<bool(const SiteId&)> contains;
  std::function<std::vector<SiteIncidence>(const SiteId&)> neighbors;
  std::function<Color(const SiteId&)> color = [](const SiteId&) { return Color{0}; };

  /// Throws InputError when `id` is not a vertex of the ambient graph.
  void check(const SiteId& id) const;
  /// neighbors(id) after check(id).
  std::vector<SiteIncidence> adjacent(const SiteId& id) const;
};

/// A finite set of ambient vertices materialised as an induced subgraph;
/// graph vertex i is ids[i].
struct Patch {
  ColoredGraph graph;
  std::vector<SiteId> ids;
};

/// Induced subgraph of the ambient graph on `ids` (kept in the given order).
Patch materialize(const AdjacencyOracle& oracle, std::vector<SiteId> ids);

/// Ball of radius r around `center` in the ambient graph; ids ordered by
/// (distance, id), so the center is vertex 0.
Patch oracle_ball(const AdjacencyOracle& oracle, const SiteId& center, int r);

/// Z^dim, tag 0, coords of length dim, nearest-neighbour edges.
AdjacencyOracle lattice_oracle(int dim);

/// The 2D and 3D lattices glued at their origins. Origin is tag 0 with
/// coords (0,0,0); tag 2 holds (x,y,0) != 0 of the square lattice, tag 3
/// holds (x,y,z) != 0 of the cubic lattice. Degree bound 10.
AdjacencyOracle glued_lattice_oracle();
SiteId glued_site(int side, std::int64_t x, std::int64_t y, std::int64_t z = 0);

/// Infinite 3-regular tree. Tag 4; coords are the reduced path from the
/// root: first step in {0,1,2}, later steps in {0,1}.
AdjacencyOracle regular_tree_oracle();

/// Finite graph viewed as an oracle; tag 1, coords {vertex}.
AdjacencyOracle graph_oracle(std::shared_ptr<const ColoredGraph> g);
SiteId graph_site(Vertex v);

}  // namespace gslab
