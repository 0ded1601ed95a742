#include <doctest.h>

#include <cmath>

#include "gslab/decomposition.hpp"
#include "gslab/error.hpp"
#include "gslab/generators.hpp"

using namespace gslab;

TEST_CASE("single vertex needs no removal") {
  auto cert = decompose_by_growth(path_graph(1), 0.3);
  CHECK(cert.removed_edges.empty());
  CHECK(cert.K == 1);
  CHECK(verify_certificate(path_graph(1), cert, 0.3, 1));
}

TEST_CASE("epsilon must be positive") {
  CHECK_THROWS_AS(decompose_by_growth(path_graph(4), 0.0), InputError);
  CHECK_THROWS_AS(decompose_by_growth(path_graph(4), -1.0), InputError);
}

TEST_CASE("epsilon at least one removes nothing") {
  auto g = disjoint_union(path_graph(5), cycle_graph(3));
  auto cert = decompose_by_growth(g, 1.0);
  CHECK(cert.removed_edges.empty());
  CHECK(cert.K == 5);
  CHECK(verify_certificate(g, cert, 1.0, 5));
}

TEST_CASE("paths are cut periodically") {
  for (std::size_t n : {100u, 1000u}) {
    auto g = path_graph(n);
    auto cert = decompose_by_growth(g, 0.1);
    // From an end, a segment of m vertices has m-1 inner edges and one
    // leaving edge: accepted once 1 <= 0.1 m, i.e. m = 10.
    CHECK(cert.K == 10);
    CHECK(cert.edges_removed_fraction <= 0.1);
    CHECK(cert.removed_edges.size() == n / 10 - 1);
    CHECK(verify_certificate(g, cert, 0.1, 21));
    CHECK(cert.vertex_fraction <= 0.1 * g.degree_bound());
  }
}

TEST_CASE("grid certificates verify and the search radius is bounded by growth") {
  const double eps = 0.2;
  // A rejected radius multiplies the inner edge count by more than
  // 1/(1-eps), starting from one edge; grid balls hold at most
  // 2(2R^2+2R+1) edges.
  int r_f = 1;
  while (std::pow(1.0 / (1.0 - eps), r_f) < 2.0 * (2.0 * (r_f + 1) * (r_f + 1) + 2.0 * (r_f + 1) + 1.0)) ++r_f;
  for (std::size_t n : {20u, 40u}) {
    auto g = grid2d(n);
    auto cert = decompose_by_growth(g, eps);
    CHECK(verify_certificate(g, cert, eps, cert.K));
    CHECK(cert.edges_removed_fraction <= eps);
    CHECK(cert.max_search_radius <= r_f);
    // Corner ball of radius 8: 45 vertices, 72 inner and 18 leaving edges.
    CHECK(cert.components.front().size() == 45);
  }
}

TEST_CASE("tampered certificates fail verification") {
  auto g = path_graph(50);
  auto cert = decompose_by_growth(g, 0.1);
  REQUIRE(verify_certificate(g, cert, 0.1, 10));
  CHECK_FALSE(verify_certificate(g, cert, 0.1, 9));

  auto merged = cert;
  merged.components[0].insert(merged.components[0].end(), merged.components[1].begin(), merged.components[1].end());
  merged.components.erase(merged.components.begin() + 1);
  CHECK_FALSE(verify_certificate(g, merged, 0.1, 100));

  auto understated = cert;
  understated.edges_removed_fraction /= 2;
  CHECK_FALSE(verify_certificate(g, understated, 0.1, 10));

  auto fewer = cert;
  fewer.removed_edges.pop_back();
  CHECK_FALSE(verify_certificate(g, fewer, 0.1, 10));

  auto dangling = cert;
  dangling.removed_edges.push_back({0, 5});
  CHECK_THROWS_AS(verify_certificate(g, dangling, 0.1, 10), InputError);

  CHECK_FALSE(verify_certificate(g, cert, 0.01, 10));
}

TEST_CASE("boundary of boxes, balls and whole graphs") {
  auto z2 = lattice_oracle(2);
  for (std::int64_t n : {1, 2, 5, 10}) {
    auto box = lattice_box(2, n);
    CHECK(boundary(z2, box.ids).size() == static_cast<std::size_t>(n == 1 ? 1 : 4 * n - 4));
  }
  auto ball = oracle_ball(z2, SiteId{0, {0, 0}}, 3);
  auto bd = boundary(z2, ball.ids);
  CHECK(bd.size() == 12);
  for (const auto& id : bd) CHECK(std::abs(id.coords[0]) + std::abs(id.coords[1]) == 3);

  auto c = std::make_shared<const ColoredGraph>(cycle_graph(7));
  auto whole = graph_oracle(c);
  std::vector<SiteId> all;
  for (Vertex v = 0; v < 7; ++v) all.push_back(graph_site(v));
  CHECK(boundary(whole, all).empty());
  std::vector<SiteId> bad{SiteId{0, {0}}};
  CHECK_THROWS_AS(boundary(whole, bad), InputError);
}

TEST_CASE("folner profiles") {
  auto z2 = lattice_oracle(2);
  std::vector<std::vector<SiteId>> boxes;
  for (std::int64_t n : {10, 20, 40}) boxes.push_back(lattice_box(2, n).ids);
  auto prof = folner_profile(z2, boxes);
  REQUIRE(prof.rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const double n = 10.0 * std::pow(2.0, static_cast<double>(i));
    CHECK(prof.rows[i].ratio == doctest::Approx((4 * n - 4) / (n * n)));
  }
  CHECK(prof.decreasing_to_zero);

  std::vector<std::vector<SiteId>> same(3, boxes[0]);
  auto flat = folner_profile(z2, same);
  CHECK(flat.rows[0].ratio == flat.rows[2].ratio);
  CHECK_FALSE(flat.decreasing_to_zero);

  auto tree = regular_tree_oracle();
  std::vector<std::vector<SiteId>> balls;
  for (int r = 1; r <= 6; ++r) balls.push_back(oracle_ball(tree, SiteId{4, {}}, r).ids);
  auto tp = folner_profile(tree, balls);
  for (const auto& row : tp.rows) CHECK(row.ratio >= 0.5);
  CHECK_FALSE(tp.decreasing_to_zero);
}
