#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gslab {

using Vertex = std::uint32_t;
using Color = std::uint32_t;

/// Undirected edge with one color per orientation. Stored with u < v;
/// color_uv colors the directed edge u->v, color_vu colors v->u.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Color color_uv = 0;
  Color color_vu = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// One adjacency entry seen from the owning vertex x.
struct Incidence {
  Vertex neighbor = 0;
  Color out_color = 0;  // color of x -> neighbor
  Color in_color = 0;   // color of neighbor -> x

  friend bool operator==(const Incidence&, const Incidence&) = default;
  friend auto operator<=>(const Incidence&, const Incidence&) = default;
};

/// Finite (X,S)-graph: vertex colors from an alphabet of size x_alphabet,
/// directed-edge colors from an alphabet of size s_alphabet, declared
/// degree bound d.
///
/// Construction is permissive so that validate() can report loops,
/// duplicates, degree and alphabet violations instead of throwing.
/// Immutable once built.
class ColoredGraph {
 public:
  ColoredGraph() = default;
  ColoredGraph(int degree_bound, int x_alphabet, int s_alphabet,
               std::vector<Color> vertex_colors, std::vector<Edge> edges);

  /// Uncolored graph on n vertices (both alphabets of size 1).
  static ColoredGraph uncolored(std::size_t n, int degree_bound,
                                std::span<const std::pair<Vertex, Vertex>> edges);

  std::size_t size() const { return vertex_colors_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  int degree_bound() const { return degree_bound_; }
  int x_alphabet() const { return x_alphabet_; }
  int s_alphabet() const { return s_alphabet_; }

  Color color(Vertex x) const { return vertex_colors_[x]; }
  const std::vector<Color>& vertex_colors() const { return vertex_colors_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Neighbors of x sorted by neighbor index.
  std::span<const Incidence> adjacent(Vertex x) const {
    return {adjacency_.data() + offsets_[x], adjacency_.data() + offsets_[x + 1]};
  }
  std::size_t degree(Vertex x) const { return offsets_[x + 1] - offsets_[x]; }
  std::size_t max_degree() const;

  /// Incidence x -> y if the edge exists.
  std::optional<Incidence> find_edge(Vertex x, Vertex y) const;

  bool contains(Vertex x) const { return x < size(); }
  void check_vertex(Vertex x) const;

  friend bool operator==(const ColoredGraph& a, const ColoredGraph& b);

 private:
  int degree_bound_ = 0;
  int x_alphabet_ = 1;
  int s_alphabet_ = 1;
  std::vector<Color> vertex_colors_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Incidence> adjacency_;
};

/// Returns human-readable invariant violations; empty iff the graph is a
/// valid simple (X,S)-graph within its degree bound.
std::vector<std::string> validate(const ColoredGraph& g);

/// Throws InputError listing the violations, if any.
void require_valid(const ColoredGraph& g);

/// Graph distances from source, -1 for unreachable. Stops at max_radius
/// when given.
std::vector<int> bfs_distances(const ColoredGraph& g, Vertex source,
                               std::optional<int> max_radius = std::nullopt);

/// Connected components as sorted vertex lists, ordered by smallest vertex.
std::vector<std::vector<Vertex>> connected_components(const ColoredGraph& g);
bool is_connected(const ColoredGraph& g);

/// Induced subgraph on `vertices` (in the given order). Vertex i of the
/// result is vertices[i].
ColoredGraph induced_subgraph(const ColoredGraph& g, std::span<const Vertex> vertices);

/// Disjoint union: copies of g laid out consecutively.
ColoredGraph disjoint_copies(const ColoredGraph& g, std::size_t copies);
ColoredGraph disjoint_union(const ColoredGraph& a, const ColoredGraph& b);

/// H^sigma: vertex sigma[x] of the result carries x's color, and
/// (sigma[x], sigma[y]) is an edge colored like (x, y).
ColoredGraph permute(const ColoredGraph& h, std::span<const Vertex> sigma);

/// Copy of g without the listed undirected edges (given as (u, v) pairs in
/// either order). Missing edges are ignored.
ColoredGraph remove_edges(const ColoredGraph& g, std::span<const std::pair<Vertex, Vertex>> removed);

/// Same graph with a new vertex coloring.
ColoredGraph recolor(const ColoredGraph& g, std::vector<Color> colors, int x_alphabet);

}  // namespace gslab
