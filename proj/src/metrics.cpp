#include "gslab/metrics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "gslab/canonical.hpp"
#include "gslab/census.hpp"
#include "gslab/error.hpp"

namespace gslab {

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::exact:
      return "exact";
    case BoundKind::upper_bound:
      return "upper_bound";
    case BoundKind::lower_bound:
      return "lower_bound";
  }
  return "unknown";
}

namespace {

void require_same_size(const ColoredGraph& g, const ColoredGraph& h, const char* what) {
  if (g.size() != h.size()) {
    throw InputError(std::string(what) + ": vertex counts differ (" + std::to_string(g.size()) + " vs " +
                     std::to_string(h.size()) + ")");
  }
}

// Complete invariant of a star up to rooted isomorphism: root color plus
// the sorted multiset of (neighbour color, out color, in color).
using StarSignature = std::pair<Color, std::vector<std::tuple<Color, Color, Color>>>;

StarSignature star_signature(const ColoredGraph& g, Vertex y) {
  StarSignature sig{g.color(y), {}};
  for (const auto& inc : g.adjacent(y)) sig.second.emplace_back(g.color(inc.neighbor), inc.out_color, inc.in_color);
  std::sort(sig.second.begin(), sig.second.end());
  return sig;
}

// Dense class ids for star signatures of both graphs.
std::pair<std::vector<int>, std::vector<int>> star_classes(const ColoredGraph& g, const ColoredGraph& h) {
  std::map<StarSignature, int> ids;
  auto assign = [&](const ColoredGraph& graph) {
    std::vector<int> out(graph.size());
    for (Vertex y = 0; y < graph.size(); ++y) {
      auto [it, _] = ids.try_emplace(star_signature(graph, y), static_cast<int>(ids.size()));
      out[y] = it->second;
    }
    return out;
  };
  auto a = assign(g);
  auto b = assign(h);
  return {std::move(a), std::move(b)};
}

std::size_t count_mismatches(const ColoredGraph& g, const ColoredGraph& h, const std::vector<Vertex>& sigma) {
  std::size_t bad = 0;
  for (Vertex x = 0; x < h.size(); ++x) {
    const Vertex y = sigma[x];
    bool same = g.color(y) == h.color(x) && g.degree(y) == h.degree(x);
    if (same) {
      for (const auto& inc : h.adjacent(x)) {
        const Vertex z = sigma[inc.neighbor];
        auto e = g.find_edge(y, z);
        if (!e || e->out_color != inc.out_color || e->in_color != inc.in_color ||
            g.color(z) != h.color(inc.neighbor)) {
          same = false;
          break;
        }
      }
    }
    if (!same) ++bad;
  }
  return bad;
}

std::vector<Vertex> invert(const std::vector<Vertex>& perm) {
  std::vector<Vertex> inv(perm.size());
  for (Vertex i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
  return inv;
}

// Branch and bound over bijections tau: V(g) -> V(h) (tau = sigma^{-1}).
class ExactSearch {
 public:
  ExactSearch(const ColoredGraph& g, const ColoredGraph& h) : g_(g), h_(h), n_(g.size()) {
    std::tie(class_g_, class_h_) = star_classes(g, h);
    num_classes_ = 0;
    for (int c : class_g_) num_classes_ = std::max(num_classes_, c + 1);
    for (int c : class_h_) num_classes_ = std::max(num_classes_, c + 1);
    free_g_.assign(num_classes_, 0);
    free_h_.assign(num_classes_, 0);
    for (int c : class_g_) ++free_g_[c];
    for (int c : class_h_) ++free_h_[c];
    tau_.assign(n_, kNone);
    tau_inv_.assign(n_, kNone);
    flagged_.assign(n_, false);
    // BFS order over g so neighbourhoods complete early.
    std::vector<bool> seen(n_, false);
    for (Vertex s = 0; s < n_; ++s) {
      if (seen[s]) continue;
      seen[s] = true;
      std::size_t head = order_.size();
      order_.push_back(s);
      for (; head < order_.size(); ++head)
        for (const auto& inc : g.adjacent(order_[head]))
          if (!seen[inc.neighbor]) {
            seen[inc.neighbor] = true;
            order_.push_back(inc.neighbor);
          }
    }
  }

  void solve(std::size_t initial_best, std::vector<Vertex> initial_tau) {
    best_ = initial_best;
    best_tau_ = std::move(initial_tau);
    step(0);
  }

  std::size_t best() const { return best_; }
  const std::vector<Vertex>& best_tau() const { return best_tau_; }

 private:
  static constexpr Vertex kNone = ~Vertex{0};

  std::size_t lower_bound() const {
    std::size_t matchable = 0;
    for (int c = 0; c < num_classes_; ++c) matchable += std::min(free_g_[c], free_h_[c]);
    return flagged_count_ + (unflagged_free_ - std::min(unflagged_free_, matchable));
  }

  void flag(Vertex y, std::vector<Vertex>& undo) {
    if (flagged_[y]) return;
    flagged_[y] = true;
    ++flagged_count_;
    if (tau_[y] == kNone) {
      --free_g_[class_g_[y]];
      --unflagged_free_;
    }
    undo.push_back(y);
  }

  void unflag(const std::vector<Vertex>& undo) {
    for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
      const Vertex y = *it;
      flagged_[y] = false;
      --flagged_count_;
      if (tau_[y] == kNone) {
        ++free_g_[class_g_[y]];
        ++unflagged_free_;
      }
    }
  }

  // Checks the pair (y, z) of assigned g-vertices after tau(y) was set.
  void check_pair(Vertex y, Vertex z, std::vector<Vertex>& undo) {
    const Vertex w = tau_[y], u = tau_[z];
    auto eg = g_.find_edge(y, z);
    auto eh = h_.find_edge(w, u);
    if (!eg && !eh) return;
    if (!eg || !eh || eg->out_color != eh->out_color || eg->in_color != eh->in_color) {
      flag(y, undo);
      flag(z, undo);
      return;
    }
    if (g_.color(z) != h_.color(u)) flag(y, undo);
    if (g_.color(y) != h_.color(w)) flag(z, undo);
  }

  void step(std::size_t depth) {
    if (depth == n_) {
      if (flagged_count_ < best_) {
        best_ = flagged_count_;
        best_tau_ = tau_;
      }
      return;
    }
    if (lower_bound() >= best_) return;
    const Vertex y = order_[depth];
    // Candidates with the same star class first.
    std::vector<Vertex> candidates;
    for (Vertex w = 0; w < n_; ++w)
      if (tau_inv_[w] == kNone && class_h_[w] == class_g_[y]) candidates.push_back(w);
    for (Vertex w = 0; w < n_; ++w)
      if (tau_inv_[w] == kNone && class_h_[w] != class_g_[y]) candidates.push_back(w);

    for (Vertex w : candidates) {
      std::vector<Vertex> undo;
      const bool was_flagged = flagged_[y];
      // y leaves the free pool.
      if (!was_flagged) {
        --free_g_[class_g_[y]];
        --unflagged_free_;
      }
      --free_h_[class_h_[w]];
      tau_[y] = w;
      tau_inv_[w] = y;
      if (class_g_[y] != class_h_[w]) flag(y, undo);
      for (const auto& inc : g_.adjacent(y))
        if (tau_[inc.neighbor] != kNone) check_pair(y, inc.neighbor, undo);
      for (const auto& inc : h_.adjacent(w)) {
        const Vertex z = tau_inv_[inc.neighbor];
        if (z != kNone && !g_.find_edge(y, z)) check_pair(y, z, undo);
      }
      step(depth + 1);
      // Undo flags while y still counts as assigned, then release y.
      unflag(undo);
      tau_inv_[w] = kNone;
      tau_[y] = kNone;
      ++free_h_[class_h_[w]];
      if (!was_flagged) {
        ++free_g_[class_g_[y]];
        ++unflagged_free_;
      }
    }
  }

  const ColoredGraph& g_;
  const ColoredGraph& h_;
  std::size_t n_;
  std::vector<int> class_g_, class_h_;
  int num_classes_ = 0;
  std::vector<std::size_t> free_g_, free_h_;
  std::vector<Vertex> tau_, tau_inv_, order_;
  std::vector<bool> flagged_;
  std::size_t flagged_count_ = 0;
  std::size_t unflagged_free_ = n_;
  std::size_t best_ = 0;
  std::vector<Vertex> best_tau_;
};

struct Component {
  std::vector<Vertex> vertices;
  CanonicalForm canon;
};

std::map<std::string, std::vector<Component>> components_by_code(const ColoredGraph& g) {
  std::map<std::string, std::vector<Component>> out;
  for (auto& members : connected_components(g)) {
    auto sub = induced_subgraph(g, members);
    auto canon = canonicalize(sub, std::nullopt);
    auto code = canon.code;
    out[code].push_back({std::move(members), std::move(canon)});
  }
  return out;
}

}  // namespace

bool same_star(const ColoredGraph& g, const ColoredGraph& h, Vertex y) {
  if (g.color(y) != h.color(y) || g.degree(y) != h.degree(y)) return false;
  auto a = g.adjacent(y);
  auto b = h.adjacent(y);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i] || g.color(a[i].neighbor) != h.color(b[i].neighbor)) return false;
  }
  return true;
}

double delta(const ColoredGraph& g, const ColoredGraph& h) {
  require_same_size(g, h, "delta");
  if (g.size() == 0) return 0.0;
  std::size_t bad = 0;
  for (Vertex y = 0; y < g.size(); ++y)
    if (!same_star(g, h, y)) ++bad;
  return static_cast<double>(bad) / static_cast<double>(g.size());
}

double delta_under(const ColoredGraph& g, const ColoredGraph& h, const std::vector<Vertex>& sigma) {
  require_same_size(g, h, "delta_under");
  if (sigma.size() != h.size()) throw InputError("delta_under: permutation size mismatch");
  if (g.size() == 0) return 0.0;
  return static_cast<double>(count_mismatches(g, h, sigma)) / static_cast<double>(g.size());
}

MetricResult delta_s_heuristic(const ColoredGraph& g, const ColoredGraph& h) {
  require_same_size(g, h, "delta_s_heuristic");
  const std::size_t n = g.size();
  constexpr Vertex kNone = ~Vertex{0};
  std::vector<Vertex> tau(n, kNone);  // g-vertex -> h-vertex
  std::vector<bool> used_h(n, false);

  auto comps_g = components_by_code(g);
  auto comps_h = components_by_code(h);
  for (auto& [code, list_g] : comps_g) {
    auto it = comps_h.find(code);
    if (it == comps_h.end()) continue;
    const auto& list_h = it->second;
    const std::size_t pairs = std::min(list_g.size(), list_h.size());
    for (std::size_t k = 0; k < pairs; ++k) {
      const auto& cg = list_g[k];
      const auto& ch = list_h[k];
      for (std::size_t i = 0; i < cg.vertices.size(); ++i) {
        const Vertex gy = cg.vertices[cg.canon.order[i]];
        const Vertex hy = ch.vertices[ch.canon.order[i]];
        tau[gy] = hy;
        used_h[hy] = true;
      }
    }
  }
  Vertex next_h = 0;
  for (Vertex y = 0; y < n; ++y) {
    if (tau[y] != kNone) continue;
    while (used_h[next_h]) ++next_h;
    tau[y] = next_h;
    used_h[next_h] = true;
  }
  MetricResult out;
  out.kind = BoundKind::upper_bound;
  out.witness = invert(tau);
  out.value = delta_under(g, h, *out.witness);
  return out;
}

MetricResult delta_s_exact(const ColoredGraph& g, const ColoredGraph& h, std::size_t threshold) {
  require_same_size(g, h, "delta_s_exact");
  if (g.size() > threshold) {
    throw InputError("delta_s_exact: n=" + std::to_string(g.size()) + " exceeds exact threshold " +
                     std::to_string(threshold));
  }
  MetricResult out;
  out.kind = BoundKind::exact;
  if (g.size() == 0) {
    out.witness = std::vector<Vertex>{};
    return out;
  }
  auto start = delta_s_heuristic(g, h);
  const auto start_sigma = *start.witness;
  const std::size_t start_bad = count_mismatches(g, h, start_sigma);
  ExactSearch search(g, h);
  search.solve(start_bad, invert(start_sigma));
  out.witness = invert(search.best_tau());
  out.value = static_cast<double>(search.best()) / static_cast<double>(g.size());
  return out;
}

MetricResult delta_rho_upper(const ColoredGraph& g, const ColoredGraph& h, int max_scale,
                             std::size_t exact_threshold) {
  if (!is_connected(g) || !is_connected(h)) throw InputError("delta_rho_upper: both graphs must be connected");
  if (g.size() == 0 || h.size() == 0) throw InputError("delta_rho_upper: empty graph");
  if (max_scale < 1) throw InputError("delta_rho_upper: max_scale must be >= 1");
  const std::size_t lcm = std::lcm(g.size(), h.size());
  MetricResult best;
  best.kind = BoundKind::upper_bound;
  best.value = 2.0;
  for (int s = 1; s <= max_scale; ++s) {
    const std::size_t total = lcm * static_cast<std::size_t>(s);
    const std::size_t q = total / g.size(), r = total / h.size();
    auto big_g = disjoint_copies(g, q);
    auto big_h = disjoint_copies(h, r);
    MetricResult at = total <= exact_threshold ? delta_s_exact(big_g, big_h, exact_threshold)
                                               : delta_s_heuristic(big_g, big_h);
    if (at.value < best.value) {
      best.value = at.value;
      best.witness = std::move(at.witness);
      best.scale = {q, r};
    }
  }
  return best;
}

MetricResult delta_rho_lower(const ColoredGraph& g, const ColoredGraph& h, int r) {
  if (!is_connected(g) || !is_connected(h)) throw InputError("delta_rho_lower: both graphs must be connected");
  auto p = census(g, r);
  auto q = census(h, r);
  double gap = 0.0;
  std::string arg;
  auto consider = [&](const std::string& code) {
    const double d = std::abs(p.frequency(code) - q.frequency(code));
    if (d > gap) {
      gap = d;
      arg = code;
    }
  };
  for (const auto& [code, _] : p.counts) consider(code);
  for (const auto& [code, _] : q.counts) consider(code);
  const int d = std::max(g.degree_bound(), h.degree_bound());
  MetricResult out;
  out.kind = BoundKind::lower_bound;
  out.value = gap / (3.0 * static_cast<double>(moore_bound(d, 2 * r)));
  if (!arg.empty()) out.witness_code = to_hex(arg);
  return out;
}

}  // namespace gslab
