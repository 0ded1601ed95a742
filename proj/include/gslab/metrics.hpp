#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gslab/colored_graph.hpp"

namespace gslab {

enum class BoundKind { exact, upper_bound, lower_bound };
std::string to_string(BoundKind kind);

/// A distance value together with what it certifies. `witness` is the
/// permutation sigma (host vertex x of the second graph goes to sigma[x])
/// reproducing the value, when one exists; `witness_code` is the hex
/// canonical code of the pattern certifying a lower bound.
struct MetricResult {
  double value = 0.0;
  BoundKind kind = BoundKind::exact;
  std::optional<std::vector<Vertex>> witness;
  std::optional<std::string> witness_code;
  std::pair<std::size_t, std::size_t> scale{1, 1};
};

/// True iff the stars of y in g and h coincide as colored subgraphs of the
/// common vertex set: same color at y, same neighbour set, same neighbour
/// colors, same colors on both orientations of every incident edge.
bool same_star(const ColoredGraph& g, const ColoredGraph& h, Vertex y);

/// Fraction of vertices whose stars differ. Graphs must share the vertex
/// set 0..n-1.
double delta(const ColoredGraph& g, const ColoredGraph& h);

/// delta(g, h^sigma), evaluated without materialising h^sigma.
double delta_under(const ColoredGraph& g, const ColoredGraph& h, const std::vector<Vertex>& sigma);

inline constexpr std::size_t kDefaultExactThreshold = 10;

/// min over all permutations sigma of delta(g, h^sigma), by branch and
/// bound. Throws InputError when n exceeds `threshold`.
MetricResult delta_s_exact(const ColoredGraph& g, const ColoredGraph& h,
                           std::size_t threshold = kDefaultExactThreshold);

/// Upper bound on delta_s: isomorphic connected components are matched
/// (classes in canonical-code order, components by smallest vertex), the
/// remaining vertices are paired in index order.
MetricResult delta_s_heuristic(const ColoredGraph& g, const ColoredGraph& h);

/// Upper bound on the geometric distance: for s = 1..max_scale, compares
/// q copies of g with r copies of h where q|V(g)| = r|V(h)| = s*lcm, using
/// the exact search when the blow-up is within `exact_threshold` and the
/// component heuristic otherwise. Returns the best value with its scale.
MetricResult delta_rho_upper(const ColoredGraph& g, const ColoredGraph& h, int max_scale,
                             std::size_t exact_threshold = kDefaultExactThreshold);

/// Lower bound gap / (3 t(d, 2r)) on the geometric distance, where gap is
/// the census gap at radius r and d the larger declared degree bound.
MetricResult delta_rho_lower(const ColoredGraph& g, const ColoredGraph& h, int r);

}  // namespace gslab
