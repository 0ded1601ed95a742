#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gslab/colored_graph.hpp"

namespace gslab {

/// Result of canonical labeling by colour refinement plus
/// individualisation/backtracking.
///
/// `code` is a byte string; two (rooted) colored graphs receive the same
/// code iff they are isomorphic by a map preserving the root, vertex colors
/// and both directed edge colors. `order[i]` is the vertex placed at
/// canonical position i (the root, when present, is position 0);
/// `position` is its inverse. `orbit[v]` is the smallest vertex in v's orbit
/// under the (rooted) colored automorphism group.
struct CanonicalForm {
  std::string code;
  std::vector<Vertex> order;
  std::vector<Vertex> position;
  std::vector<Vertex> orbit;
};

/// Canonical form of g, with `root` pinned when given. Works for
/// disconnected graphs too; callers that need connectivity check it.
CanonicalForm canonicalize(const ColoredGraph& g, std::optional<Vertex> root);

/// Canonical code of a connected graph rooted at `root`. Throws InputError
/// on disconnected input.
std::string canonical_code(const ColoredGraph& g, Vertex root);

/// Rebuilds the canonically labeled graph encoded by a code. The root (if
/// the code is rooted) is vertex 0. Degree bound is set to the max degree,
/// alphabets to one past the largest color used.
struct DecodedPattern {
  ColoredGraph graph;
  bool rooted = false;
};
DecodedPattern decode_code(std::string_view code);

std::string to_hex(std::string_view bytes);
std::string from_hex(std::string_view hex);

/// A connected colored graph with a distinguished root, plus its canonical
/// labeling. `origin[i]` is the vertex of the host graph that pattern
/// vertex i came from (root first).
struct RootedPattern {
  ColoredGraph graph;
  Vertex root = 0;
  int radius = 0;
  std::vector<Vertex> origin;
  CanonicalForm canon;

  const std::string& code() const { return canon.code; }
};

/// Induced subgraph on {y : d(x, y) <= r}, rooted at x. Pattern vertices
/// are ordered by (distance, host index).
RootedPattern ball(const ColoredGraph& g, Vertex x, int r);

/// x, its neighbors and only the edges incident to x, rooted at x.
RootedPattern star(const ColoredGraph& g, Vertex y);

bool rooted_isomorphic(const RootedPattern& a, const RootedPattern& b);

}  // namespace gslab
