#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "brute.hpp"
#include "gslab/error.hpp"
#include "gslab/generators.hpp"
#include "gslab/spectral.hpp"

using namespace gslab;

namespace {

std::vector<ColoredGraph> one(const ColoredGraph& g) { return {g}; }

Eigen::MatrixXd random_symmetric(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = gauss(rng);
  return a;
}

}  // namespace

TEST_CASE("eigenvalues of small kernels") {
  auto e = eigenvalues(laplacian(path_graph(2)));
  REQUIRE(e.size() == 2);
  CHECK(e[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(e[1] == doctest::Approx(2.0));
  auto c4 = eigenvalues(laplacian(cycle_graph(4)));
  std::vector<double> expected{0, 2, 2, 4};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(c4[i] - expected[i]) < 1e-12);
  auto zero = eigenvalues(Eigen::MatrixXd::Zero(5, 5).eval());
  CHECK(zero == std::vector<double>(5, 0.0));
}

TEST_CASE("path spectrum matches the closed form") {
  for (std::size_t n : {7u, 50u, 200u}) {
    auto e = eigenvalues(laplacian(path_graph(n)));
    std::vector<double> ref;
    for (std::size_t k = 0; k < n; ++k) ref.push_back(2.0 - 2.0 * std::cos(std::numbers::pi * k / n));
    std::sort(ref.begin(), ref.end());
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(e[i] - ref[i]) < 1e-9);
  }
}

TEST_CASE("asymmetric kernels are rejected") {
  Eigen::MatrixXd a(2, 2);
  a << 0, 1, 0, 0;
  CHECK_THROWS_AS(eigenvalues(a), InputError);
}

TEST_CASE("distribution functions and sup distance") {
  SpectralDistribution n({1.0, 0.0, 1.0, 3.0});
  CHECK(n.eigenvalues() == std::vector<double>{0.0, 1.0, 1.0, 3.0});
  CHECK(n(-1.0) == 0.0);
  CHECK(n(0.0) == 0.25);
  CHECK(n(1.0) == 0.75);
  CHECK(n.left_limit(1.0) == 0.25);
  CHECK(n(10.0) == 1.0);
  CHECK(sup_distance(n, n) == 0.0);
  CHECK(sup_distance(SpectralDistribution({0.0}), SpectralDistribution({1.0})) == 1.0);
  CHECK(sup_distance(SpectralDistribution({0.0, 2.0}), SpectralDistribution({1.0, 2.0})) == 0.5);
  CHECK_THROWS_AS(SpectralDistribution({}), InputError);

  auto p = SpectralDistribution(eigenvalues(laplacian(path_graph(100))));
  auto c = SpectralDistribution(eigenvalues(laplacian(cycle_graph(100))));
  CHECK(sup_distance(p, c) <= 0.02);
}

TEST_CASE("sup distance is a metric on random spectra") {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<int> pick(0, 6);
  auto draw = [&] {
    std::vector<double> v(12);
    for (auto& x : v) x = pick(rng) * 0.5;
    return SpectralDistribution(v);
  };
  for (int trial = 0; trial < 200; ++trial) {
    auto a = draw(), b = draw(), c = draw();
    CHECK(sup_distance(a, b) == sup_distance(b, a));
    CHECK(sup_distance(a, c) <= sup_distance(a, b) + sup_distance(b, c) + 1e-15);
    // Exhaustive check on a fine grid containing every breakpoint.
    double ref = 0.0;
    for (int i = -2; i <= 14; ++i) {
      const double l = i * 0.25;
      ref = std::max(ref, std::abs(a(l) - b(l)));
    }
    CHECK(sup_distance(a, b) == doctest::Approx(ref));
  }
}

TEST_CASE("moments: both evaluators and closed forms") {
  auto c = laplacian(cycle_graph(12));
  CHECK(moment_trace(c, 0) == 1.0);
  CHECK(moment_trace(c, 1) == doctest::Approx(2.0));
  CHECK(moment_trace(c, 2) == doctest::Approx(6.0));
  auto g = grid2d(5);
  auto l = laplacian(g);
  for (int k = 0; k <= 5; ++k) {
    const double a = moment_trace(l, k), b = moment_spectral(l, k);
    CHECK(std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(a)));
  }
  auto id = identity_kernel(std::make_shared<const ColoredGraph>(g));
  for (int k = 0; k <= 4; ++k) CHECK(moment_trace(id, k) == 1.0);
  auto three = laplacian(random_regular(30, 3, 9));
  CHECK(moment_trace(three, 1) == doctest::Approx(3.0));
  CHECK_THROWS_AS(moment_trace(c, -1), InputError);
}

TEST_CASE("pattern trace equals the matrix trace") {
  auto rule10 = tabulate_rule(4, laplacian_function(), one(path_graph(10)));
  CHECK(trace_via_patterns(path_graph(10), tabulate_rule(1, laplacian_function(), one(path_graph(10))), 1) ==
        doctest::Approx(1.8));
  CHECK(trace_via_patterns(cycle_graph(9), tabulate_rule(1, laplacian_function(), one(cycle_graph(9))), 1) ==
        doctest::Approx(2.0));

  auto g = grid2d(20);
  auto rule = tabulate_rule(1, laplacian_function(), one(g));
  CHECK(std::abs(trace_via_patterns(g, rule, 2) - moment_trace(laplacian(g), 2)) <= 1e-10);

  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 4; ++trial) {
    auto h = brute::random_graph(rng, 40, 2, 2, 0.08, 3);
    for (int s = 1; s <= 2; ++s) {
      auto r = tabulate_rule(s, random_function(rng()), one(h));
      auto k = kernel_from_rule(h, r);
      for (int p = 0; p <= 3; ++p) CHECK(std::abs(trace_via_patterns(h, r, p) - moment_trace(k, p)) <= 1e-10);
    }
  }
  auto partial = tabulate_rule(1, laplacian_function(), one(cycle_graph(5)));
  CHECK_THROWS_AS(trace_via_patterns(path_graph(6), partial, 2), InputError);
}

TEST_CASE("rank perturbation bound") {
  std::mt19937_64 rng(53);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 30, r = 1 + trial % 5;
    auto c = random_symmetric(rng, n);
    Eigen::MatrixXd d = c;
    for (int i = 0; i < r; ++i) {
      Eigen::VectorXd v(n);
      for (int j = 0; j < n; ++j) v(j) = gauss(rng);
      d += gauss(rng) * v * v.transpose();
    }
    auto check = rank_bound_check(c, d);
    CHECK(check.rank == static_cast<std::size_t>(r));
    CHECK(check.bound_ok);
  }
  auto same = rank_bound_check(to_dense(laplacian(cycle_graph(6))), to_dense(laplacian(cycle_graph(6))));
  CHECK(same.rank == 0);
  CHECK(same.distance == 0.0);
  auto pc = rank_bound_check(laplacian(path_graph(60)), laplacian(cycle_graph(60)));
  // The difference is the Laplacian of the single closing edge.
  CHECK(pc.rank == 1);
  CHECK(pc.distance <= 1.0 / 60.0 + 1e-12);
  CHECK(pc.bound_ok);
  CHECK_THROWS_AS(rank_bound_check(Eigen::MatrixXd::Zero(2, 2).eval(), Eigen::MatrixXd::Zero(3, 3).eval()),
                  InputError);
}

TEST_CASE("ids runs") {
  std::vector<OperatorKernel> constant{laplacian(cycle_graph(10)), laplacian(cycle_graph(10)),
                                       laplacian(cycle_graph(10))};
  auto flat = ids_run(constant, 3);
  for (const auto& row : flat.rows) {
    CHECK(row.sup_gap_prev == 0.0);
    for (double g : row.moment_gaps) CHECK(g == doctest::Approx(0.0).epsilon(1e-12));
  }
  std::vector<OperatorKernel> paths;
  for (std::size_t n : {50u, 100u, 200u}) paths.push_back(laplacian(path_graph(n)));
  auto report = ids_run(paths, 2);
  REQUIRE(report.rows.size() == 3);
  CHECK(report.rows[2].sup_gap_prev < report.rows[1].sup_gap_prev);
  CHECK(report.final_samples.front().first == doctest::Approx(0.0));
  CHECK(report.final_samples.back().first == doctest::Approx(4.0));
  CHECK(report.final_samples.size() >= 512);
  for (const auto& [l, v] : report.final_samples) {
    const double f = std::acos(std::clamp(1.0 - l / 2.0, -1.0, 1.0)) / std::numbers::pi;
    CHECK(std::abs(v - f) <= 0.011);
  }
  CHECK_THROWS_AS(ids_run(std::span(paths).first(1), 2), InputError);
}

TEST_CASE("boundary defect") {
  auto z2 = lattice_oracle(2);
  auto box = lattice_box(2, 20);
  auto rule = tabulate_rule(1, laplacian_function(), z2, box.ids);
  auto d = boundary_defect(rule, z2, box);
  CHECK(d.boundary_size == 76);
  CHECK(d.rank_defect <= 76);
  CHECK(d.distance <= 76.0 / 400.0);
  CHECK(d.bound_ok);

  auto z1 = lattice_oracle(1);
  auto seg = lattice_box(1, 30);
  auto d1 = boundary_defect(tabulate_rule(1, laplacian_function(), z1, seg.ids), z1, seg);
  CHECK(d1.rank_defect == 2);
  CHECK(d1.distance <= 2.0 / 30.0);

  auto c = std::make_shared<const ColoredGraph>(cycle_graph(9));
  auto whole_oracle = graph_oracle(c);
  std::vector<SiteId> all;
  for (Vertex v = 0; v < 9; ++v) all.push_back(graph_site(v));
  auto whole = materialize(whole_oracle, all);
  auto d0 = boundary_defect(tabulate_rule(1, laplacian_function(), whole_oracle, whole.ids), whole_oracle, whole);
  CHECK(d0.rank_defect == 0);
  CHECK(d0.distance == 0.0);
}
