#include <doctest.h>

#include "brute.hpp"
#include "gslab/census.hpp"
#include "gslab/error.hpp"
#include "gslab/generators.hpp"
#include "gslab/metrics.hpp"

using namespace gslab;

TEST_CASE("delta matches the dense star comparison") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    auto g = brute::random_graph(rng, n, 2, 2, 0.4);
    auto h = brute::random_graph(rng, n, 2, 2, 0.4);
    CHECK(delta(g, h) == doctest::Approx(brute::delta(g, h)));
    CHECK(delta(g, h) == delta(h, g));
    CHECK(delta(g, g) == 0.0);
    auto sigma = brute::random_permutation(rng, n);
    CHECK(delta_under(g, h, sigma) == doctest::Approx(brute::delta(g, permute(h, sigma))));
  }
}

TEST_CASE("path against triangle") {
  auto p = path_graph(3);
  auto k = cycle_graph(3);
  CHECK(delta(p, k) == doctest::Approx(2.0 / 3.0));
  auto r = delta_s_exact(p, k);
  CHECK(r.kind == BoundKind::exact);
  CHECK(r.value == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("exact delta_s matches exhaustive minimisation") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    auto g = brute::random_graph(rng, n, 1 + trial % 2, 1 + (trial / 2) % 2, 0.4);
    auto h = brute::random_graph(rng, n, 1 + trial % 2, 1 + (trial / 2) % 2, 0.4);
    auto exact = delta_s_exact(g, h);
    CHECK(exact.value == doctest::Approx(brute::delta_s(g, h)));
    REQUIRE(exact.witness);
    CHECK(delta_under(g, h, *exact.witness) == doctest::Approx(exact.value));
    auto heur = delta_s_heuristic(g, h);
    CHECK(heur.kind == BoundKind::upper_bound);
    CHECK(heur.value >= exact.value - 1e-12);
    CHECK(delta_under(g, h, *heur.witness) == doctest::Approx(heur.value));
  }
}

TEST_CASE("relabelled copies are at distance zero") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = brute::random_graph(rng, 8, 2, 2, 0.3);
    auto h = permute(g, brute::random_permutation(rng, 8));
    CHECK(delta_s_exact(g, h).value == 0.0);
    CHECK(delta_s_heuristic(g, h).value == 0.0);
  }
}

TEST_CASE("exact threshold is enforced") {
  CHECK_THROWS_AS(delta_s_exact(path_graph(11), path_graph(11)), InputError);
  CHECK_NOTHROW(delta_s_exact(path_graph(11), path_graph(11), 11));
  CHECK_THROWS_AS(delta(path_graph(3), path_graph(4)), InputError);
}

TEST_CASE("geometric distance bounds") {
  auto up = delta_rho_upper(cycle_graph(3), cycle_graph(6), 2);
  CHECK(up.kind == BoundKind::upper_bound);
  // Triangles cannot be laid over hexagons without some star disagreeing.
  CHECK(up.value > 0.0);
  CHECK(up.scale.first * 3 == up.scale.second * 6);
  auto lo = delta_rho_lower(cycle_graph(3), cycle_graph(6), 1);
  CHECK(lo.kind == BoundKind::lower_bound);
  CHECK(lo.value <= up.value);
  CHECK(delta_rho_lower(cycle_graph(3), cycle_graph(6), 0).value == 0.0);
  auto lo2 = delta_rho_lower(cycle_graph(3), cycle_graph(6), 2);
  CHECK(lo2.witness_code);
  CHECK_THROWS_AS(delta_rho_upper(disjoint_copies(path_graph(2), 2), path_graph(4), 1), InputError);

  auto same = delta_rho_upper(cycle_graph(4), cycle_graph(4), 1);
  CHECK(same.value == 0.0);
}

TEST_CASE("census gap is controlled by the geometric distance") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = brute::random_connected_graph(rng, 2 + rng() % 4, 2, 1, 0.6, 3);
    auto h = brute::random_connected_graph(rng, 2 + rng() % 4, 2, 1, 0.6, 3);
    auto up = delta_rho_upper(g, h, 2);
    for (int r = 0; r <= 2; ++r) {
      const double gap = distribution_gap(census(g, r), census(h, r));
      CHECK(gap <= 3.0 * static_cast<double>(moore_bound(3, 2 * r)) * up.value + 1e-12);
      CHECK(delta_rho_lower(g, h, r).value <= up.value + 1e-12);
    }
  }
}
