#include <doctest.h>

#include <cmath>
#include <set>

#include "brute.hpp"
#include "gslab/canonical.hpp"
#include "gslab/census.hpp"
#include "gslab/error.hpp"
#include "gslab/generators.hpp"
#include "gslab/operators.hpp"
#include "gslab/spectral.hpp"

using namespace gslab;

namespace {

std::vector<ColoredGraph> one(const ColoredGraph& g) { return {g}; }

}  // namespace

TEST_CASE("laplacian of K_2 and row sums") {
  auto k2 = laplacian(path_graph(2));
  CHECK(k2.at(0, 0) == 1.0);
  CHECK(k2.at(0, 1) == -1.0);
  CHECK(k2.at(1, 0) == -1.0);
  CHECK(k2.at(1, 1) == 1.0);
  CHECK(k2.range == 1);
  CHECK(k2.bound_m == 1.0);
  auto g = grid2d(5);
  auto l = laplacian(g);
  for (const auto& row : l.rows) {
    double sum = 0.0;
    for (const auto& [y, v] : row) sum += v;
    CHECK(sum == 0.0);
  }
  CHECK(l.bound_m == 4.0);
}

TEST_CASE("laplacian rule reproduces the laplacian") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    auto g = brute::random_graph(rng, 20, 2, 2, 0.15, 4);
    auto rule = tabulate_rule(1, laplacian_function(), one(g));
    auto from_rule = kernel_from_rule(g, rule);
    CHECK(to_dense(from_rule) == to_dense(laplacian(g)));
  }
  // Radius 2 patterns carry the same rows.
  auto g = grid2d(6);
  auto wide = kernel_from_rule(g, tabulate_rule(2, laplacian_function(), one(g)));
  CHECK(to_dense(wide) == to_dense(laplacian(g)));
}

TEST_CASE("zero rule gives the zero kernel") {
  auto g = cycle_graph(6);
  PatternFunction zero = [](const ColoredGraph& p) { return std::vector<double>(p.size(), 0.0); };
  auto k = kernel_from_rule(g, tabulate_rule(1, zero, one(g)));
  CHECK(k.bound_m == 0.0);
  for (const auto& row : k.rows) CHECK(row.empty());
}

TEST_CASE("distance two indicator on cycles") {
  PatternFunction at_two = [](const ColoredGraph& p) {
    auto d = bfs_distances(p, 0);
    std::vector<double> v(p.size(), 0.0);
    for (Vertex x = 0; x < p.size(); ++x)
      if (d[x] == 2) v[x] = 1.0;
    return v;
  };
  for (std::size_t n : {5u, 6u, 9u}) {
    auto g = cycle_graph(n);
    auto k = kernel_from_rule(g, tabulate_rule(2, at_two, one(g)));
    for (Vertex x = 0; x < n; ++x) {
      REQUIRE(k.rows[x].size() == 2);
      CHECK(k.at(x, static_cast<Vertex>((x + 2) % n)) == 1.0);
      CHECK(k.at(x, static_cast<Vertex>((x + n - 2) % n)) == 1.0);
    }
  }
}

TEST_CASE("missing patterns and non-invariant tables are errors") {
  auto rule = tabulate_rule(1, laplacian_function(), one(cycle_graph(5)));
  CHECK_THROWS_AS(kernel_from_rule(path_graph(5), rule), InputError);

  // Root of a rooted P_3 at the centre: the two leaves share an orbit.
  auto p3 = path_graph(3);
  auto code = canonical_code(p3, 1);
  InvariantRule bad;
  bad.radius = 1;
  bad.table[code] = {2.0, -1.0, -0.5};
  CHECK_THROWS_AS(validate_rule(bad), InputError);
  bad.table[code] = {2.0, -1.0};
  CHECK_THROWS_AS(validate_rule(bad), InputError);
  bad.table[code] = {2.0, -1.0, -1.0};
  CHECK_NOTHROW(validate_rule(bad));
}

TEST_CASE("random rules are orbit invariant and deterministic") {
  auto g = grid2d(7);
  auto a = tabulate_rule(1, random_function(5), one(g));
  auto b = tabulate_rule(1, random_function(5), one(g));
  auto c = tabulate_rule(1, random_function(6), one(g));
  CHECK(a.table == b.table);
  CHECK(a.table != c.table);
  auto k = kernel_from_rule(g, a);
  CHECK(check_pattern_invariance(g, k, 1));
  for (const auto& [code, values] : a.table)
    for (double v : values) CHECK(std::abs(v) <= 1.0);
}

TEST_CASE("algebra: identity, adjoint, products") {
  auto g = std::make_shared<const ColoredGraph>(path_graph(4));
  auto l = laplacian(g);
  auto id = identity_kernel(g);
  CHECK(to_dense(multiply(l, id)) == to_dense(l));
  CHECK(to_dense(adjoint(l)) == to_dense(l));
  auto l2 = multiply(l, l);
  CHECK(l2.range == 2);
  CHECK(l2.at(0, 2) == 1.0);
  CHECK(to_dense(l2) == to_dense(l) * to_dense(l));
  CHECK(to_dense(add(l, scale(l, -1.0))).isZero());
  CHECK_THROWS_AS(add(l, laplacian(path_graph(5))), InputError);
}

TEST_CASE("product support and magnitude bounds") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 8; ++trial) {
    auto graph = std::make_shared<const ColoredGraph>(brute::random_connected_graph(rng, 25, 2, 1, 0.12, 3));
    std::vector<ColoredGraph> gs{*graph};
    auto a = kernel_from_rule(graph, tabulate_rule(1, random_function(rng()), gs));
    auto b = kernel_from_rule(graph, tabulate_rule(2, random_function(rng()), gs));
    auto ab = multiply(a, b);
    CHECK(ab.range == 3);
    for (Vertex x = 0; x < graph->size(); ++x) {
      auto d = bfs_distances(*graph, x);
      for (const auto& [y, v] : ab.rows[x]) CHECK(d[y] <= 3);
    }
    const double t = static_cast<double>(moore_bound(graph->degree_bound(), a.range));
    CHECK(ab.bound_m <= a.bound_m * b.bound_m * t + 1e-12);
    auto sym = add(a, adjoint(a));
    for (double l : eigenvalues(sym))
      CHECK(std::abs(l) <= 2.0 * sym.bound_m * static_cast<double>(moore_bound(graph->degree_bound(), sym.range)));
  }
}

TEST_CASE("extract_rule round trip") {
  auto g = cycle_graph(8);
  auto rule = tabulate_rule(2, random_function(3), one(g));
  auto k = kernel_from_rule(g, rule);
  auto back = extract_rule(g, k, 2);
  CHECK(back.table == rule.table);

  auto p = path_graph(9);
  auto rp = tabulate_rule(1, random_function(4), one(p));
  CHECK(extract_rule(p, kernel_from_rule(p, rp), 1).table == rp.table);
}

TEST_CASE("pattern invariance checks") {
  auto g = cycle_graph(10);
  auto l = laplacian(g);
  CHECK(check_pattern_invariance(g, l, 1));
  auto bumped = l;
  bumped.rows[0][0].second += 0.5;
  CHECK_FALSE(check_pattern_invariance(g, bumped, 1));
  CHECK_THROWS_AS(extract_rule(g, bumped, 1), InputError);
  // Orbit violation inside one row: the two neighbours get different values.
  auto lopsided = l;
  for (auto& row : lopsided.rows) row.front().second = -2.0;
  CHECK_FALSE(check_pattern_invariance(g, lopsided, 1));
  // Entry outside the ball.
  auto far = l;
  far.rows[0].emplace_back(5, 1.0);
  CHECK_FALSE(check_pattern_invariance(g, far, 1));
}

TEST_CASE("finite volume restriction on Z^2 boxes") {
  auto z2 = lattice_oracle(2);
  auto box = lattice_box(2, 6);
  auto rule = tabulate_rule(1, laplacian_function(), z2, box.ids);
  CHECK(rule.table.size() == 1);
  auto a = restrict(rule, z2, box);
  for (Vertex x = 0; x < 36; ++x) CHECK(a.at(x, x) == 4.0);
  auto diff = to_dense(a) - to_dense(laplacian(box.graph));
  std::set<Vertex> support;
  for (Eigen::Index i = 0; i < diff.rows(); ++i)
    for (Eigen::Index j = 0; j < diff.cols(); ++j)
      if (diff(i, j) != 0.0) {
        CHECK(i == j);
        support.insert(static_cast<Vertex>(i));
      }
  CHECK(support.size() == 20);
  CHECK(check_pattern_invariance(z2, box, a, 1));
  // Translation invariance survives truncation, so the box rows are also
  // invariant for the intrinsic patterns.
  CHECK(check_pattern_invariance(box.graph, a, 1));
  // An initial segment of a longer path: both ends look alike intrinsically
  // but have ambient degrees 1 and 2.
  auto ambient = graph_oracle(std::make_shared<const ColoredGraph>(path_graph(20)));
  std::vector<SiteId> head;
  for (Vertex v = 0; v <= 10; ++v) head.push_back(graph_site(v));
  auto seg = materialize(ambient, head);
  auto restricted = restrict(tabulate_rule(1, laplacian_function(), ambient, seg.ids), ambient, seg);
  CHECK(restricted.at(0, 0) == 1.0);
  CHECK(restricted.at(10, 10) == 2.0);
  CHECK(check_pattern_invariance(ambient, seg, restricted, 1));
  CHECK_FALSE(check_pattern_invariance(seg.graph, restricted, 1));
  auto tiny = tabulate_rule(1, laplacian_function(), one(path_graph(3)));
  CHECK_THROWS_AS(restrict(tiny, z2, box), InputError);
}
