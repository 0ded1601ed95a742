#include "gslab/canonical.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <tuple>

#include "gslab/error.hpp"

namespace gslab {
namespace {

// Partition of the vertex set into ordered cells; cell[v] is the index of
// v's cell. Cell indices are dense and their order is isomorphism-invariant.
using Cells = std::vector<std::uint32_t>;

std::size_t count_cells(const Cells& cells) {
  if (cells.empty()) return 0;
  return *std::max_element(cells.begin(), cells.end()) + 1;
}

// Replaces every vertex's cell by the rank of (cell, sorted neighbour
// signature) until the partition is stable.
void refine(const ColoredGraph& g, Cells& cells) {
  const std::size_t n = g.size();
  std::size_t ncells = count_cells(cells);
  using Sig = std::vector<std::tuple<std::uint32_t, Color, Color>>;
  std::vector<Sig> sigs(n);
  std::vector<Vertex> idx(n);
  while (true) {
    for (Vertex v = 0; v < n; ++v) {
      auto& s = sigs[v];
      s.clear();
      for (const auto& inc : g.adjacent(v)) s.emplace_back(cells[inc.neighbor], inc.out_color, inc.in_color);
      std::sort(s.begin(), s.end());
    }
    std::iota(idx.begin(), idx.end(), Vertex{0});
    auto less = [&](Vertex a, Vertex b) {
      if (cells[a] != cells[b]) return cells[a] < cells[b];
      return sigs[a] < sigs[b];
    };
    std::sort(idx.begin(), idx.end(), less);
    Cells next(n);
    std::uint32_t id = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0 && less(idx[i - 1], idx[i])) ++id;
      next[idx[i]] = id;
    }
    const std::size_t count = n == 0 ? 0 : id + 1;
    cells = std::move(next);
    if (count == ncells) return;
    ncells = count;
  }
}

void put_u32(std::string& out, std::uint32_t value) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((value >> (8 * i)) & 0xffu));
}

std::uint32_t get_u32(std::string_view in, std::size_t& at) {
  if (at + 4 > in.size()) throw InputError("truncated canonical code");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[at + i])) << (8 * i);
  at += 4;
  return v;
}

// Serialises g relabeled by `position` (a discrete partition).
std::string serialize(const ColoredGraph& g, const Cells& position, bool rooted) {
  const std::size_t n = g.size();
  std::vector<Color> colors(n);
  for (Vertex v = 0; v < n; ++v) colors[position[v]] = g.color(v);
  std::vector<std::array<std::uint32_t, 4>> edges;
  edges.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    std::uint32_t a = position[e.u], b = position[e.v];
    Color cab = e.color_uv, cba = e.color_vu;
    if (a > b) {
      std::swap(a, b);
      std::swap(cab, cba);
    }
    edges.push_back({a, b, cab, cba});
  }
  std::sort(edges.begin(), edges.end());
  std::string out;
  out.reserve(9 + 4 * n + 16 * edges.size());
  out.push_back(rooted ? 'R' : 'U');
  put_u32(out, static_cast<std::uint32_t>(n));
  put_u32(out, static_cast<std::uint32_t>(edges.size()));
  for (Color c : colors) put_u32(out, c);
  for (const auto& e : edges)
    for (auto x : e) put_u32(out, x);
  return out;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), Vertex{0}); }
  Vertex find(Vertex x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<Vertex> parent_;
};

class Search {
 public:
  Search(const ColoredGraph& g, bool rooted) : g_(g), rooted_(rooted) {}

  void run(Cells cells) {
    refine(g_, cells);
    std::vector<Vertex> prefix;
    visit(cells, prefix);
  }

  const std::string& best_code() const { return best_code_; }
  const Cells& best_position() const { return best_position_; }

  std::vector<Vertex> orbits() const {
    UnionFind uf(g_.size());
    for (const auto& gen : generators_)
      for (Vertex v = 0; v < g_.size(); ++v) uf.unite(v, gen[v]);
    std::vector<Vertex> out(g_.size());
    for (Vertex v = 0; v < g_.size(); ++v) out[v] = uf.find(v);
    return out;
  }

 private:
  void visit(const Cells& cells, std::vector<Vertex>& prefix) {
    const std::size_t n = g_.size();
    const std::size_t ncells = count_cells(cells);
    if (ncells == n) {
      leaf(cells);
      return;
    }
    // Target: smallest non-singleton cell, lowest index on ties.
    std::vector<std::size_t> sizes(ncells, 0);
    for (auto c : cells) ++sizes[c];
    std::uint32_t target = 0;
    std::size_t best = n + 1;
    for (std::uint32_t c = 0; c < ncells; ++c) {
      if (sizes[c] > 1 && sizes[c] < best) {
        best = sizes[c];
        target = c;
      }
    }
    std::vector<Vertex> candidates;
    for (Vertex v = 0; v < n; ++v)
      if (cells[v] == target) candidates.push_back(v);

    std::vector<Vertex> explored;
    std::size_t seen_generators = static_cast<std::size_t>(-1);
    std::optional<UnionFind> uf;
    for (Vertex v : candidates) {
      if (!explored.empty()) {
        if (seen_generators != generators_.size()) {
          uf.emplace(n);
          for (const auto& gen : generators_) {
            bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](Vertex p) { return gen[p] == p; });
            if (!fixes) continue;
            for (Vertex u = 0; u < n; ++u) uf->unite(u, gen[u]);
          }
          seen_generators = generators_.size();
        }
        const Vertex root = uf->find(v);
        bool equivalent = std::any_of(explored.begin(), explored.end(),
                                      [&](Vertex w) { return uf->find(w) == root; });
        if (equivalent) continue;
      }
      Cells child(n);
      for (Vertex u = 0; u < n; ++u) child[u] = 2 * cells[u] + (u == v ? 0u : 1u);
      // Re-densify before refinement.
      std::vector<std::uint32_t> keys(child.begin(), child.end());
      std::sort(keys.begin(), keys.end());
      keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
      for (auto& c : child) c = static_cast<std::uint32_t>(std::lower_bound(keys.begin(), keys.end(), c) - keys.begin());
      refine(g_, child);
      prefix.push_back(v);
      visit(child, prefix);
      prefix.pop_back();
      explored.push_back(v);
    }
  }

  void leaf(const Cells& position) {
    std::string code = serialize(g_, position, rooted_);
    if (first_code_.empty()) {
      first_code_ = code;
      first_position_ = position;
      best_code_ = std::move(code);
      best_position_ = position;
      return;
    }
    if (code == first_code_) add_automorphism(first_position_, position);
    if (code == best_code_) {
      add_automorphism(best_position_, position);
    } else if (code < best_code_) {
      best_code_ = std::move(code);
      best_position_ = position;
    }
  }

  // gamma = pos_a^{-1} o pos_b maps a vertex to the one holding the same
  // canonical position in leaf a.
  void add_automorphism(const Cells& pos_a, const Cells& pos_b) {
    const std::size_t n = g_.size();
    std::vector<Vertex> inv_a(n);
    for (Vertex v = 0; v < n; ++v) inv_a[pos_a[v]] = v;
    std::vector<Vertex> gamma(n);
    bool identity = true;
    for (Vertex v = 0; v < n; ++v) {
      gamma[v] = inv_a[pos_b[v]];
      identity = identity && gamma[v] == v;
    }
    if (!identity) generators_.push_back(std::move(gamma));
  }

  const ColoredGraph& g_;
  bool rooted_;
  std::string first_code_;
  Cells first_position_;
  std::string best_code_;
  Cells best_position_;
  std::vector<std::vector<Vertex>> generators_;
};

}  // namespace

CanonicalForm canonicalize(const ColoredGraph& g, std::optional<Vertex> root) {
  const std::size_t n = g.size();
  if (root) g.check_vertex(*root);
  CanonicalForm out;
  if (n == 0) {
    out.code = serialize(g, {}, false);
    return out;
  }
  // Initial cells: root alone first, then by vertex color.
  std::vector<std::pair<std::uint32_t, Color>> key(n);
  for (Vertex v = 0; v < n; ++v) key[v] = {root && *root == v ? 0u : 1u, g.color(v)};
  std::vector<std::pair<std::uint32_t, Color>> sorted = key;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Cells cells(n);
  for (Vertex v = 0; v < n; ++v)
    cells[v] = static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), key[v]) - sorted.begin());

  Search search(g, root.has_value());
  search.run(std::move(cells));
  out.code = search.best_code();
  out.position.assign(search.best_position().begin(), search.best_position().end());
  out.order.resize(n);
  for (Vertex v = 0; v < n; ++v) out.order[out.position[v]] = v;
  out.orbit = search.orbits();
  return out;
}

std::string canonical_code(const ColoredGraph& g, Vertex root) {
  if (!is_connected(g)) throw InputError("canonical_code: pattern is not connected");
  return canonicalize(g, root).code;
}

DecodedPattern decode_code(std::string_view code) {
  if (code.empty() || (code[0] != 'R' && code[0] != 'U')) throw InputError("malformed canonical code");
  std::size_t at = 1;
  const std::uint32_t n = get_u32(code, at);
  const std::uint32_t m = get_u32(code, at);
  if (code.size() != 9 + 4ull * n + 16ull * m) throw InputError("canonical code length mismatch");
  std::vector<Color> colors(n);
  Color max_x = 0, max_s = 0;
  for (auto& c : colors) {
    c = get_u32(code, at);
    max_x = std::max(max_x, c);
  }
  std::vector<Edge> edges(m);
  for (auto& e : edges) {
    e.u = get_u32(code, at);
    e.v = get_u32(code, at);
    e.color_uv = get_u32(code, at);
    e.color_vu = get_u32(code, at);
    if (e.u >= n || e.v >= n) throw InputError("canonical code references missing vertex");
    max_s = std::max({max_s, e.color_uv, e.color_vu});
  }
  ColoredGraph g(0, static_cast<int>(max_x) + 1, static_cast<int>(max_s) + 1, colors, edges);
  ColoredGraph sized(static_cast<int>(g.max_degree()), g.x_alphabet(), g.s_alphabet(),
                     std::move(colors), std::move(edges));
  return {std::move(sized), code[0] == 'R'};
}

std::string to_hex(std::string_view bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

std::string from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw InputError("odd-length hex string");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw InputError(std::string("invalid hex digit '") + c + "'");
  };
  std::string out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2)
    out.push_back(static_cast<char>((nibble(hex[i]) << 4) | nibble(hex[i + 1])));
  return out;
}

RootedPattern ball(const ColoredGraph& g, Vertex x, int r) {
  if (r < 0) throw InputError("ball radius must be non-negative");
  auto dist = bfs_distances(g, x, r);
  std::vector<Vertex> members;
  for (Vertex v = 0; v < g.size(); ++v)
    if (dist[v] >= 0) members.push_back(v);
  std::stable_sort(members.begin(), members.end(), [&](Vertex a, Vertex b) { return dist[a] < dist[b]; });
  RootedPattern p;
  p.graph = induced_subgraph(g, members);
  p.root = 0;
  p.radius = r;
  p.origin = std::move(members);
  p.canon = canonicalize(p.graph, p.root);
  return p;
}

RootedPattern star(const ColoredGraph& g, Vertex y) {
  g.check_vertex(y);
  std::vector<Vertex> members{y};
  std::vector<Color> colors{g.color(y)};
  std::vector<Edge> edges;
  for (const auto& inc : g.adjacent(y)) {
    if (inc.neighbor == y) continue;
    const auto local = static_cast<Vertex>(members.size());
    members.push_back(inc.neighbor);
    colors.push_back(g.color(inc.neighbor));
    edges.push_back({0, local, inc.out_color, inc.in_color});
  }
  RootedPattern p;
  p.graph = ColoredGraph(g.degree_bound(), g.x_alphabet(), g.s_alphabet(), std::move(colors), std::move(edges));
  p.root = 0;
  p.radius = 1;
  p.origin = std::move(members);
  p.canon = canonicalize(p.graph, p.root);
  return p;
}

bool rooted_isomorphic(const RootedPattern& a, const RootedPattern& b) { return a.code() == b.code(); }

}  // namespace gslab
