#pragma once

#include <span>
#include <utility>
#include <vector>

#include "gslab/colored_graph.hpp"
#include "gslab/oracle.hpp"

namespace gslab {

/// Edge removal witnessing the antiexpander property for (epsilon, K).
struct DecompositionCertificate {
  double epsilon = 0.0;
  std::vector<std::pair<Vertex, Vertex>> removed_edges;  // u < v
  std::vector<std::vector<Vertex>> components;           // sorted, by smallest vertex
  std::size_t K = 0;
  double edges_removed_fraction = 0.0;

  // Raw accounting from the growth search.
  std::size_t edge_count = 0;
  std::size_t boundary_vertices = 0;  // vertices on a cut edge's far side
  double vertex_fraction = 0.0;       // boundary_vertices / n
  int max_search_radius = 0;          // largest ball radius the search accepted
};

/// Ball-growing decomposition. Repeatedly takes the lowest unfinished
/// vertex x and the smallest r such that the edges leaving B_r(x) number at
/// most eps times (edges inside B_r(x) + edges leaving it), all within the
/// current remainder. The leaving edges are removed and B_r(x) is finished.
/// Every edge is charged at most once, so the removed fraction is <= eps.
/// eps >= 1 removes nothing. Throws InputError for eps <= 0.
DecompositionCertificate decompose_by_growth(const ColoredGraph& g, double eps);

/// True iff removing exactly cert.removed_edges leaves cert.components,
/// the recorded fraction matches and is <= eps, and every component has at
/// most k_max vertices. Throws InputError when a removed edge is not an
/// edge of g.
bool verify_certificate(const ColoredGraph& g, const DecompositionCertificate& cert, double eps,
                        std::size_t k_max);

/// Sites of `sub` with an ambient neighbour outside `sub`, in input order.
std::vector<SiteId> boundary(const AdjacencyOracle& ambient, std::span<const SiteId> sub);

struct FolnerRow {
  std::size_t vertices = 0;
  std::size_t boundary = 0;
  double ratio = 0.0;
};

/// `decreasing_to_zero` holds when the ratios strictly decrease and the
/// last is at most half the first.
struct FolnerProfile {
  std::vector<FolnerRow> rows;
  bool decreasing_to_zero = false;
};

FolnerProfile folner_profile(const AdjacencyOracle& ambient, std::span<const std::vector<SiteId>> subs);

}  // namespace gslab
