#include "gslab/oracle.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

#include "gslab/error.hpp"

namespace gslab {

std::string to_string(const SiteId& id) {
  std::string out = std::to_string(id.tag) + ":";
  for (std::size_t i = 0; i < id.coords.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(id.coords[i]);
  }
  return out;
}

SiteId parse_site(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("malformed site id '" + text + "'");
  SiteId id;
  try {
    id.tag = std::stoi(text.substr(0, colon));
    std::stringstream rest(text.substr(colon + 1));
    std::string part;
    while (std::getline(rest, part, ','))
      if (!part.empty()) id.coords.push_back(std::stoll(part));
  } catch (const std::logic_error&) {
    throw InputError("malformed site id '" + text + "'");
  }
  return id;
}

void AdjacencyOracle::check(const SiteId& id) const {
  if (!contains(id)) throw InputError("site " + to_string(id) + " is not a vertex of " + name);
}

std::vector<SiteIncidence> AdjacencyOracle::adjacent(const SiteId& id) const {
  check(id);
  return neighbors(id);
}

Patch materialize(const AdjacencyOracle& oracle, std::vector<SiteId> ids) {
  std::map<SiteId, Vertex> local;
  std::vector<Color> colors;
  colors.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    oracle.check(ids[i]);
    if (!local.emplace(ids[i], static_cast<Vertex>(i)).second)
      throw InputError("duplicate site " + to_string(ids[i]));
    colors.push_back(oracle.color(ids[i]));
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (const auto& inc : oracle.neighbors(ids[i])) {
      auto it = local.find(inc.neighbor);
      if (it != local.end() && static_cast<Vertex>(i) < it->second)
        edges.push_back({static_cast<Vertex>(i), it->second, inc.out_color, inc.in_color});
    }
  }
  Patch patch{ColoredGraph(oracle.degree_bound, oracle.x_alphabet, oracle.s_alphabet, std::move(colors),
                           std::move(edges)),
              std::move(ids)};
  return patch;
}

Patch oracle_ball(const AdjacencyOracle& oracle, const SiteId& center, int r) {
  if (r < 0) throw InputError("ball radius must be non-negative");
  oracle.check(center);
  std::map<SiteId, int> dist{{center, 0}};
  std::vector<SiteId> frontier{center};
  for (int layer = 0; layer < r; ++layer) {
    std::vector<SiteId> next;
    for (const auto& id : frontier)
      for (const auto& inc : oracle.adjacent(id))
        if (dist.emplace(inc.neighbor, layer + 1).second) next.push_back(inc.neighbor);
    frontier = std::move(next);
  }
  std::vector<std::pair<int, SiteId>> ordered;
  ordered.reserve(dist.size());
  for (auto& [id, d] : dist) ordered.emplace_back(d, id);
  std::sort(ordered.begin(), ordered.end());
  std::vector<SiteId> ids;
  ids.reserve(ordered.size());
  for (auto& [d, id] : ordered) ids.push_back(std::move(id));
  return materialize(oracle, std::move(ids));
}

AdjacencyOracle lattice_oracle(int dim) {
  if (dim < 1) throw InputError("lattice dimension must be >= 1");
  AdjacencyOracle o;
  o.name = "Z^" + std::to_string(dim);
  o.degree_bound = 2 * dim;
  o.contains = [dim](const SiteId& id) { return id.tag == 0 && id.coords.size() == static_cast<std::size_t>(dim); };
  o.neighbors = [dim](const SiteId& id) {
    std::vector<SiteIncidence> out;
    out.reserve(2 * static_cast<std::size_t>(dim));
    for (int axis = 0; axis < dim; ++axis) {
      for (int step : {-1, 1}) {
        SiteId n = id;
        n.coords[axis] += step;
        out.push_back({std::move(n), 0, 0});
      }
    }
    return out;
  };
  return o;
}

SiteId glued_site(int side, std::int64_t x, std::int64_t y, std::int64_t z) {
  if (x == 0 && y == 0 && z == 0) return SiteId{0, {0, 0, 0}};
  return SiteId{side, {x, y, z}};
}

AdjacencyOracle glued_lattice_oracle() {
  AdjacencyOracle o;
  o.name = "glued Z^2 + Z^3";
  o.degree_bound = 10;
  o.contains = [](const SiteId& id) {
    if (id.coords.size() != 3) return false;
    const bool origin = id.coords[0] == 0 && id.coords[1] == 0 && id.coords[2] == 0;
    if (id.tag == 0) return origin;
    if (id.tag == 2) return !origin && id.coords[2] == 0;
    if (id.tag == 3) return !origin;
    return false;
  };
  o.neighbors = [](const SiteId& id) {
    std::vector<SiteIncidence> out;
    auto push_side = [&](int side, std::array<std::int64_t, 3> c) {
      const int dims = side == 2 ? 2 : 3;
      for (int axis = 0; axis < dims; ++axis)
        for (int step : {-1, 1}) {
          auto n = c;
          n[axis] += step;
          out.push_back({glued_site(side, n[0], n[1], n[2]), 0, 0});
        }
    };
    const std::array<std::int64_t, 3> c{id.coords[0], id.coords[1], id.coords[2]};
    if (id.tag == 0) {
      push_side(2, c);
      push_side(3, c);
    } else {
      push_side(id.tag, c);
    }
    return out;
  };
  return o;
}

AdjacencyOracle regular_tree_oracle() {
  AdjacencyOracle o;
  o.name = "3-regular tree";
  o.degree_bound = 3;
  o.contains = [](const SiteId& id) {
    if (id.tag != 4) return false;
    for (std::size_t i = 0; i < id.coords.size(); ++i) {
      const auto limit = i == 0 ? 2 : 1;
      if (id.coords[i] < 0 || id.coords[i] > limit) return false;
    }
    return true;
  };
  o.neighbors = [](const SiteId& id) {
    std::vector<SiteIncidence> out;
    if (!id.coords.empty()) {
      SiteId parent = id;
      parent.coords.pop_back();
      out.push_back({std::move(parent), 0, 0});
    }
    const int children = id.coords.empty() ? 3 : 2;
    for (int c = 0; c < children; ++c) {
      SiteId child = id;
      child.coords.push_back(c);
      out.push_back({std::move(child), 0, 0});
    }
    return out;
  };
  return o;
}

SiteId graph_site(Vertex v) { return SiteId{1, {static_cast<std::int64_t>(v)}}; }

AdjacencyOracle graph_oracle(std::shared_ptr<const ColoredGraph> g) {
  AdjacencyOracle o;
  o.name = "finite graph";
  o.degree_bound = g->degree_bound();
  o.x_alphabet = g->x_alphabet();
  o.s_alphabet = g->s_alphabet();
  o.contains = [g](const SiteId& id) {
    return id.tag == 1 && id.coords.size() == 1 && id.coords[0] >= 0 &&
           static_cast<std::size_t>(id.coords[0]) < g->size();
  };
  o.neighbors = [g](const SiteId& id) {
    std::vector<SiteIncidence> out;
    for (const auto& inc : g->adjacent(static_cast<Vertex>(id.coords[0])))
      out.push_back({graph_site(inc.neighbor), inc.out_color, inc.in_color});
    return out;
  };
  o.color = [g](const SiteId& id) { return g->color(static_cast<Vertex>(id.coords[0])); };
  return o;
}

}  // namespace gslab
