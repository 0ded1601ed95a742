#include "gslab/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gslab/error.hpp"

namespace gslab {
namespace {

std::pair<Vertex, Vertex> ordered(Vertex a, Vertex b) { return {std::min(a, b), std::max(a, b)}; }

std::vector<std::vector<Vertex>> sorted_components(std::vector<std::vector<Vertex>> comps) {
  for (auto& c : comps) std::sort(c.begin(), c.end());
  std::sort(comps.begin(), comps.end());
  return comps;
}

}  // namespace

DecompositionCertificate decompose_by_growth(const ColoredGraph& g, double eps) {
  if (!(eps > 0.0)) throw InputError("epsilon must be positive");
  const std::size_t n = g.size();
  DecompositionCertificate cert;
  cert.epsilon = eps;
  cert.edge_count = g.edge_count();

  if (eps >= 1.0) {
    cert.components = connected_components(g);
    for (const auto& c : cert.components) cert.K = std::max(cert.K, c.size());
    return cert;
  }

  std::vector<char> finished(n, 0);
  std::vector<int> stamp(n, -1);  // BFS membership per round
  std::vector<char> far_side(n, 0);
  int round = 0;
  for (Vertex x = 0; x < n; ++x) {
    if (finished[x]) continue;
    // Grow B_r(x) layer by layer inside the unfinished vertices.
    std::vector<Vertex> members{x};
    std::vector<Vertex> frontier{x};
    stamp[x] = round;
    std::size_t inner = 0;
    int r = 0;
    while (true) {
      std::size_t cut = 0;
      std::vector<Vertex> next;
      for (Vertex v : frontier)
        for (const auto& inc : g.adjacent(v)) {
          const Vertex w = inc.neighbor;
          if (finished[w] || stamp[w] == round) continue;
          ++cut;
          next.push_back(w);
        }
      if (static_cast<double>(cut) <= eps * static_cast<double>(inner + cut)) {
        for (Vertex v : frontier)
          for (const auto& inc : g.adjacent(v)) {
            const Vertex w = inc.neighbor;
            if (finished[w] || stamp[w] == round) continue;
            cert.removed_edges.push_back(ordered(v, w));
            far_side[w] = 1;
          }
        break;
      }
      // Edges inside B_{r+1}: the cut edges plus edges among the new layer.
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      for (Vertex w : next) stamp[w] = round;
      inner += cut;
      for (Vertex w : next)
        for (const auto& inc : g.adjacent(w))
          if (inc.neighbor > w && !finished[inc.neighbor] && stamp[inc.neighbor] == round &&
              std::binary_search(next.begin(), next.end(), inc.neighbor))
            ++inner;
      members.insert(members.end(), next.begin(), next.end());
      frontier = std::move(next);
      ++r;
    }
    cert.max_search_radius = std::max(cert.max_search_radius, r);
    for (Vertex v : members) finished[v] = 1;
    std::sort(members.begin(), members.end());
    cert.K = std::max(cert.K, members.size());
    cert.components.push_back(std::move(members));
    ++round;
  }
  std::sort(cert.removed_edges.begin(), cert.removed_edges.end());
  cert.components = sorted_components(std::move(cert.components));
  cert.boundary_vertices = static_cast<std::size_t>(std::count(far_side.begin(), far_side.end(), 1));
  cert.vertex_fraction = n ? static_cast<double>(cert.boundary_vertices) / static_cast<double>(n) : 0.0;
  cert.edges_removed_fraction =
      cert.edge_count ? static_cast<double>(cert.removed_edges.size()) / static_cast<double>(cert.edge_count) : 0.0;
  return cert;
}

bool verify_certificate(const ColoredGraph& g, const DecompositionCertificate& cert, double eps,
                        std::size_t k_max) {
  std::set<std::pair<Vertex, Vertex>> removed;
  for (const auto& [a, b] : cert.removed_edges) {
    if (!g.contains(a) || !g.contains(b) || !g.find_edge(a, b)) {
      throw InputError("certificate removes (" + std::to_string(a) + ", " + std::to_string(b) +
                       ") which is not an edge");
    }
    if (!removed.insert(ordered(a, b)).second) return false;
  }
  const double actual =
      g.edge_count() ? static_cast<double>(removed.size()) / static_cast<double>(g.edge_count()) : 0.0;
  if (std::abs(actual - cert.edges_removed_fraction) > 1e-12) return false;
  if (actual > eps + 1e-12) return false;

  std::vector<std::pair<Vertex, Vertex>> list(removed.begin(), removed.end());
  const auto remaining = sorted_components(connected_components(remove_edges(g, list)));
  if (remaining != sorted_components(cert.components)) return false;
  for (const auto& c : remaining)
    if (c.size() > k_max) return false;
  return true;
}

std::vector<SiteId> boundary(const AdjacencyOracle& ambient, std::span<const SiteId> sub) {
  std::set<SiteId> members;
  for (const auto& id : sub) {
    ambient.check(id);
    members.insert(id);
  }
  std::vector<SiteId> out;
  for (const auto& id : sub) {
    const auto nbrs = ambient.neighbors(id);
    if (std::any_of(nbrs.begin(), nbrs.end(), [&](const SiteIncidence& inc) { return !members.count(inc.neighbor); }))
      out.push_back(id);
  }
  return out;
}

FolnerProfile folner_profile(const AdjacencyOracle& ambient, std::span<const std::vector<SiteId>> subs) {
  FolnerProfile profile;
  for (const auto& sub : subs) {
    FolnerRow row;
    row.vertices = sub.size();
    row.boundary = boundary(ambient, sub).size();
    row.ratio = row.vertices ? static_cast<double>(row.boundary) / static_cast<double>(row.vertices) : 0.0;
    profile.rows.push_back(row);
  }
  const auto& rows = profile.rows;
  bool decreasing = rows.size() >= 2;
  for (std::size_t i = 1; i < rows.size(); ++i) decreasing = decreasing && rows[i].ratio < rows[i - 1].ratio;
  profile.decreasing_to_zero = decreasing && rows.back().ratio <= rows.front().ratio / 2.0;
  return profile;
}

}  // namespace gslab
