#include "gslab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "gslab/canonical.hpp"
#include "gslab/census.hpp"
#include "gslab/decomposition.hpp"
#include "gslab/error.hpp"
#include "gslab/generators.hpp"
#include "gslab/metrics.hpp"
#include "gslab/operators.hpp"
#include "gslab/parallel.hpp"
#include "gslab/spectral.hpp"

namespace gslab {
namespace {

template <typename T>
T param(const Json& cfg, const char* key, T fallback) {
  if (!cfg.contains(key)) return fallback;
  try {
    return cfg.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config field '") + key + "': " + e.what());
  }
}

template <typename T>
T required(const Json& cfg, const char* key) {
  if (!cfg.contains(key)) throw InputError(std::string("config is missing '") + key + "'");
  return param<T>(cfg, key, T{});
}

std::vector<std::int64_t> increasing_sizes(const Json& cfg, const char* key) {
  auto sizes = required<std::vector<std::int64_t>>(cfg, key);
  if (sizes.empty()) throw InputError(std::string("'") + key + "' is empty");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw InputError(std::string("'") + key + "' entries must be >= 1");
    if (i && sizes[i] <= sizes[i - 1]) throw InputError(std::string("'") + key + "' must be strictly increasing");
  }
  return sizes;
}

std::string fmt(double v) { return format_double(v); }
std::string fmt(std::size_t v) { return std::to_string(v); }
std::string fmt(bool v) { return v ? "true" : "false"; }

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::string family_label(const Json& spec) {
  const auto family = required<std::string>(spec, "family");
  if (family == "selfsimilar") return family + "-L" + std::to_string(param<int>(spec, "levels", 1));
  if (family == "glued-box") return family + "-" + std::to_string(param<int>(spec, "side", 2)) + "d";
  return family;
}

Json with_size(const Json& base, std::int64_t n) {
  Json spec = base;
  if (spec.value("family", "") == "selfsimilar")
    spec["levels"] = n;
  else
    spec["n"] = n;
  return spec;
}

std::vector<ColoredGraph> one(const ColoredGraph& g) { return {g}; }

// ---------------------------------------------------------------- trace --

ExperimentResult run_trace(const Json& cfg) {
  ExperimentResult res;
  const int k_max = param<int>(cfg, "k_max", 4);
  const double tol = param<double>(cfg, "tolerance", 1e-10);
  const int radius = param<int>(cfg, "rule_radius", 1);
  const auto seeds = param<std::vector<std::uint64_t>>(cfg, "seeds", {1, 2, 3});
  const auto families = required<Json>(cfg, "families");
  CsvTable table({"family", "n", "rule", "k", "moment", "pattern_trace", "abs_diff"});
  double worst = 0.0;
  for (const auto& fam : families) {
    const auto g = build_family(fam);
    auto graph = std::make_shared<const ColoredGraph>(g);
    std::vector<std::pair<std::string, PatternFunction>> rules{{"laplacian", laplacian_function()}};
    for (auto s : seeds) rules.emplace_back("random-" + std::to_string(s), random_function(s));
    for (const auto& [label, fn] : rules) {
      const int r = label == "laplacian" ? 1 : radius;
      auto rule = tabulate_rule(r, fn, one(g));
      auto kernel = kernel_from_rule(graph, rule);
      for (int k = 0; k <= k_max; ++k) {
        const double m = moment_trace(kernel, k);
        const double t = trace_via_patterns(g, rule, k);
        const double diff = std::abs(m - t);
        worst = std::max(worst, diff);
        res.property_ok = res.property_ok && diff <= tol;
        table.row({family_label(fam), fmt(g.size()), label, std::to_string(k), fmt(m), fmt(t), fmt(diff)});
      }
    }
  }
  res.files["trace.csv"] = table.str();
  res.summary = {{"max_abs_diff", worst}, {"tolerance", tol}};
  return res;
}

// -------------------------------------------------------- metric axioms --

ExperimentResult run_metric_axioms(const Json& cfg) {
  ExperimentResult res;
  const int trials = param<int>(cfg, "trials", 200);
  const int n_max = param<int>(cfg, "n_max", 8);
  const auto seed = param<std::uint64_t>(cfg, "seed", 1);
  if (n_max < 1 || n_max > static_cast<int>(kDefaultExactThreshold))
    throw InputError("metric-axioms: n_max must be in 1.." + std::to_string(kDefaultExactThreshold));
  struct Row {
    std::size_t n = 0;
    bool identity = true, symmetry = true, triangle = true, relabel = true;
  };
  std::vector<Row> rows(static_cast<std::size_t>(trials));
  parallel_for(rows.size(), [&](std::size_t t) {
    std::mt19937_64 rng(seed * 1000003u + t);
    const std::size_t n = 1 + rng() % static_cast<std::size_t>(n_max);
    std::array<ColoredGraph, 3> gs;
    for (auto& g : gs) g = random_colored_graph(rng, n, 4, 2, 2, 0.2 + 0.4 * uniform01(rng));
    // Counts of differing stars, compared as integers.
    auto count = [n](double v) { return std::llround(v * static_cast<double>(n)); };
    auto d = [&](int a, int b) { return count(delta(gs[a], gs[b])); };
    auto ds = [&](const ColoredGraph& a, const ColoredGraph& b) { return count(delta_s_exact(a, b).value); };
    Row& row = rows[t];
    row.n = n;
    for (int a = 0; a < 3; ++a) {
      row.identity = row.identity && d(a, a) == 0 && ds(gs[a], gs[a]) == 0;
      for (int b = 0; b < 3; ++b) {
        if (a == b) continue;
        row.symmetry = row.symmetry && d(a, b) == d(b, a) && ds(gs[a], gs[b]) == ds(gs[b], gs[a]);
      }
    }
    const auto s01 = ds(gs[0], gs[1]), s12 = ds(gs[1], gs[2]), s02 = ds(gs[0], gs[2]);
    row.triangle = d(0, 2) <= d(0, 1) + d(1, 2) && s02 <= s01 + s12;
    std::vector<Vertex> pi(n);
    std::iota(pi.begin(), pi.end(), 0);
    std::shuffle(pi.begin(), pi.end(), rng);
    row.relabel = ds(gs[0], permute(gs[1], pi)) == s01;
  });
  CsvTable table({"trial", "n", "identity", "symmetry", "triangle", "relabel_invariance"});
  std::size_t violations = 0;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const auto& r = rows[t];
    const bool ok = r.identity && r.symmetry && r.triangle && r.relabel;
    violations += ok ? 0 : 1;
    table.row({fmt(t), fmt(r.n), fmt(r.identity), fmt(r.symmetry), fmt(r.triangle), fmt(r.relabel)});
  }
  res.property_ok = violations == 0;
  res.files["metric_axioms.csv"] = table.str();
  res.summary = {{"trials", trials}, {"violations", violations}};
  return res;
}

// ------------------------------------------------------------ rankcheck --

ExperimentResult run_rankcheck(const Json& cfg) {
  ExperimentResult res;
  const int trials = param<int>(cfg, "trials", 1000);
  const int n = param<int>(cfg, "n", 200);
  const int r_max = param<int>(cfg, "r_max", 20);
  const auto seed = required<std::uint64_t>(cfg, "seed");
  if (n < 1 || r_max < 1 || r_max > n) throw InputError("rankcheck: need 1 <= r_max <= n");
  struct Row {
    int r = 0;
    RankCheck check;
    bool ok = false;
  };
  std::vector<Row> rows(static_cast<std::size_t>(trials));
  parallel_for(rows.size(), [&](std::size_t t) {
    std::mt19937_64 rng(seed * 1000003u + t);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd c(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) c(i, j) = c(j, i) = gauss(rng);
    const int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(r_max));
    Eigen::MatrixXd d = c;
    for (int i = 0; i < r; ++i) {
      Eigen::VectorXd v(n);
      for (int j = 0; j < n; ++j) v(j) = gauss(rng);
      d += gauss(rng) * v * v.transpose() / static_cast<double>(n);
    }
    // Exact symmetry after floating point accumulation.
    d = (0.5 * (d + d.transpose())).eval();
    rows[t].r = r;
    rows[t].check = rank_bound_check(c, d);
    rows[t].ok = rows[t].check.distance <= static_cast<double>(r) / n + 1e-12;
  });
  CsvTable table({"trial", "r", "numerical_rank", "sup_distance", "bound", "ok"});
  std::size_t violations = 0;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const auto& row = rows[t];
    violations += row.ok ? 0 : 1;
    table.row({fmt(t), std::to_string(row.r), fmt(row.check.rank), fmt(row.check.distance),
               fmt(static_cast<double>(row.r) / n), fmt(row.ok)});
  }
  res.property_ok = violations == 0;
  res.files["rankcheck.csv"] = table.str();
  res.summary = {{"trials", trials}, {"n", n}, {"violations", violations}};
  return res;
}

// ------------------------------------------------------------------ ids --

std::vector<OperatorKernel> kernels_for(const std::vector<ColoredGraph>& graphs, const Json& cfg) {
  const auto rule_ref = param<std::string>(cfg, "rule", "laplacian");
  std::vector<OperatorKernel> out;
  if (rule_ref == "laplacian") {
    for (const auto& g : graphs) out.push_back(laplacian(g));
    return out;
  }
  const auto rule = rule_from_json(read_json_file(rule_ref));
  for (const auto& g : graphs) out.push_back(kernel_from_rule(g, rule));
  return out;
}

ExperimentResult run_ids(const Json& cfg) {
  ExperimentResult res;
  const auto base = required<Json>(cfg, "generator");
  const auto sizes = increasing_sizes(cfg, "sizes");
  const int k_max = param<int>(cfg, "k_max", 4);
  std::vector<ColoredGraph> graphs;
  for (auto n : sizes) graphs.push_back(build_family(with_size(base, n)));
  if (graphs.size() < 2) throw InputError("ids: need at least two sizes");
  const auto kernels = kernels_for(graphs, cfg);
  const auto report = ids_run(kernels, k_max);

  std::vector<std::string> header{"n", "sup_gap_prev"};
  for (int k = 1; k <= k_max; ++k) header.push_back("moment_gap_" + std::to_string(k));
  CsvTable ids(header);
  for (const auto& row : report.rows) {
    std::vector<std::string> cells{fmt(row.n), fmt(row.sup_gap_prev)};
    for (double g : row.moment_gaps) cells.push_back(fmt(g));
    ids.row(cells);
  }
  res.files["ids.csv"] = ids.str();

  const auto reference = param<std::string>(cfg, "reference", "");
  if (!reference.empty() && reference != "path") throw InputError("ids: unknown reference '" + reference + "'");
  CsvTable dist(reference.empty() ? std::vector<std::string>{"lambda", "N"}
                                  : std::vector<std::string>{"lambda", "N", "reference", "abs_diff"});
  double worst = 0.0;
  for (const auto& [l, v] : report.final_samples) {
    if (reference.empty()) {
      dist.row({fmt(l), fmt(v)});
      continue;
    }
    const double f = std::acos(std::clamp(1.0 - l / 2.0, -1.0, 1.0)) / std::numbers::pi;
    worst = std::max(worst, std::abs(v - f));
    dist.row({fmt(l), fmt(v), fmt(f), fmt(std::abs(v - f))});
  }
  res.files["distribution.csv"] = dist.str();
  res.property_ok = report.cauchy;
  res.summary = {{"cauchy", report.cauchy}};
  if (!reference.empty()) {
    const double tol = param<double>(cfg, "tolerance", 0.01);
    res.summary["reference_sup_diff"] = worst;
    res.summary["tolerance"] = tol;
    res.property_ok = res.property_ok && worst <= tol;
  }
  return res;
}

// ------------------------------------------------------------ decompose --

ExperimentResult run_decompose(const Json& cfg) {
  ExperimentResult res;
  CsvTable table({"family", "n", "vertices", "epsilon", "K", "removed_edges", "edge_fraction", "vertex_fraction",
                  "k_max", "verified"});
  std::map<std::string, std::vector<std::size_t>> k_by_family;
  Json certs = Json::array();
  for (const auto& c : required<Json>(cfg, "cases")) {
    const auto g = build_family(c);
    const double eps = required<double>(c, "epsilon");
    auto cert = decompose_by_growth(g, eps);
    const auto k_max = param<std::size_t>(c, "k_max", cert.K);
    const bool ok = verify_certificate(g, cert, eps, k_max);
    res.property_ok = res.property_ok && ok;
    const auto label = family_label(c);
    k_by_family[label + "@" + fmt(eps)].push_back(cert.K);
    table.row({label, std::to_string(param<std::int64_t>(c, "n", 0)), fmt(g.size()), fmt(eps), fmt(cert.K),
               fmt(cert.removed_edges.size()), fmt(cert.edges_removed_fraction), fmt(cert.vertex_fraction),
               fmt(k_max), fmt(ok)});
  }
  bool k_constant = true;
  for (const auto& [family, ks] : k_by_family)
    k_constant = k_constant && std::all_of(ks.begin(), ks.end(), [&](std::size_t k) { return k == ks.front(); });
  if (param<bool>(cfg, "require_constant_k", false)) res.property_ok = res.property_ok && k_constant;
  res.files["decompose.csv"] = table.str();
  res.summary = {{"k_constant_per_family", k_constant}};
  return res;
}

// ------------------------------------------------------- counterexample --

ExperimentResult run_counterexample(const Json& cfg) {
  ExperimentResult res;
  const auto s2 = increasing_sizes(cfg, "sizes_2d");
  const auto s3 = increasing_sizes(cfg, "sizes_3d");
  if (s2.size() != s3.size()) throw InputError("counterexample: sizes_2d and sizes_3d must pair up");
  const double min_gap = param<double>(cfg, "min_gap", 0.05);
  const double stability = param<double>(cfg, "stability", 0.02);
  const auto glued = glued_lattice_oracle();
  const auto flat = folner_boxes(glued, 2, s2);
  const auto cubes = folner_boxes(glued, 3, s3);
  std::vector<OperatorKernel> kernels;
  for (std::size_t i = 0; i < s2.size(); ++i) {
    kernels.push_back(laplacian(flat[i].graph));
    kernels.push_back(laplacian(cubes[i].graph));
  }
  std::vector<std::vector<double>> spectra(kernels.size());
  parallel_for(kernels.size(), [&](std::size_t i) { spectra[i] = eigenvalues(kernels[i]); });
  CsvTable table({"level", "n_2d", "n_3d", "sup_distance"});
  std::vector<double> gaps;
  for (std::size_t i = 0; i < s2.size(); ++i) {
    const double gap =
        sup_distance(SpectralDistribution(spectra[2 * i]), SpectralDistribution(spectra[2 * i + 1]));
    gaps.push_back(gap);
    table.row({fmt(i), fmt(flat[i].graph.size()), fmt(cubes[i].graph.size()), fmt(gap)});
  }
  const auto [lo, hi] = std::minmax_element(gaps.begin(), gaps.end());
  res.property_ok = *lo > min_gap && *hi - *lo <= stability;
  res.files["counterexample.csv"] = table.str();
  // Final distributions of both sides on a shared grid.
  const auto enclosure = gershgorin_enclosure(kernels[kernels.size() - 1]);
  CsvTable samples({"lambda", "N_2d", "N_3d"});
  const SpectralDistribution n2(spectra[spectra.size() - 2]), n3(spectra.back());
  for (double l : lambda_grid(enclosure, 512, {}, 0)) samples.row({fmt(l), fmt(n2(l)), fmt(n3(l))});
  res.files["distributions.csv"] = samples.str();
  res.summary = {{"gaps", gaps}, {"min_gap", min_gap}, {"stability", stability}};
  return res;
}

// --------------------------------------------------------- antiexpander --

ExperimentResult run_antiexpander(const Json& cfg) {
  ExperimentResult res;
  const double eps = param<double>(cfg, "epsilon", 0.05);
  const auto k_max = param<std::size_t>(cfg, "k_max", 50);
  const auto n = param<std::size_t>(cfg, "n", 200);
  const int degree = param<int>(cfg, "degree", 3);
  const auto seeds = required<std::vector<std::uint64_t>>(cfg, "seeds");
  const auto grid_n = param<std::size_t>(cfg, "grid", 45);
  CsvTable table({"graph", "seed", "vertices", "K", "edge_fraction", "verified"});
  bool random_all_fail = true;
  for (auto seed : seeds) {
    const auto g = random_regular(n, degree, seed);
    const auto cert = decompose_by_growth(g, eps);
    const bool ok = verify_certificate(g, cert, eps, k_max);
    random_all_fail = random_all_fail && !ok;
    table.row({"random-regular", std::to_string(seed), fmt(g.size()), fmt(cert.K), fmt(cert.edges_removed_fraction),
               fmt(ok)});
  }
  const auto grid = grid2d(grid_n);
  const auto cert = decompose_by_growth(grid, eps);
  const bool grid_ok = verify_certificate(grid, cert, eps, k_max);
  table.row({"grid2d", "", fmt(grid.size()), fmt(cert.K), fmt(cert.edges_removed_fraction), fmt(grid_ok)});
  res.property_ok = random_all_fail && grid_ok;
  res.files["antiexpander.csv"] = table.str();
  res.summary = {{"random_all_fail", random_all_fail}, {"grid_verified", grid_ok}, {"grid_K", cert.K}};
  return res;
}

// ------------------------------------------------------ boundary defect --

ExperimentResult run_boundary_defect(const Json& cfg) {
  ExperimentResult res;
  const int dim = param<int>(cfg, "dim", 2);
  const auto sizes = increasing_sizes(cfg, "sizes");
  const auto oracle = lattice_oracle(dim);
  CsvTable table({"n", "vertices", "boundary", "rank_defect", "sup_distance", "bound", "ok"});
  for (auto n : sizes) {
    const auto box = lattice_box(dim, n);
    const auto rule = tabulate_rule(1, laplacian_function(), oracle, box.ids);
    const auto d = boundary_defect(rule, oracle, box);
    res.property_ok = res.property_ok && d.bound_ok;
    table.row({std::to_string(n), fmt(d.n), fmt(d.boundary_size), fmt(d.rank_defect), fmt(d.distance),
               fmt(static_cast<double>(d.boundary_size) / static_cast<double>(d.n)), fmt(d.bound_ok)});
  }
  res.files["boundary_defect.csv"] = table.str();
  res.summary = {{"all_ok", res.property_ok}};
  return res;
}

// ---------------------------------------------------------- strong-weak --

ExperimentResult run_strong_weak(const Json& cfg) {
  ExperimentResult res;
  const int pairs = param<int>(cfg, "pairs", 50);
  const int n_max = param<int>(cfg, "n_max", 8);
  const int d = param<int>(cfg, "degree_bound", 3);
  const int max_scale = param<int>(cfg, "max_scale", 2);
  const auto radii = param<std::vector<int>>(cfg, "radii", {0, 1, 2});
  const auto seed = required<std::uint64_t>(cfg, "seed");
  if (n_max < 2) throw InputError("strong-weak: n_max must be >= 2");
  struct Row {
    std::size_t n_g = 0, n_h = 0;
    double upper = 0.0;
    std::vector<double> gap, lower;
  };
  std::vector<Row> rows(static_cast<std::size_t>(pairs));
  parallel_for(rows.size(), [&](std::size_t t) {
    std::mt19937_64 rng(seed * 1000003u + t);
    auto draw = [&] {
      const std::size_t n = 2 + rng() % static_cast<std::size_t>(n_max - 1);
      while (true) {
        auto g = random_colored_graph(rng, n, d, 2, 1, 0.3 + 0.4 * uniform01(rng));
        if (is_connected(g)) return g;
      }
    };
    const auto g = draw(), h = draw();
    Row& row = rows[t];
    row.n_g = g.size();
    row.n_h = h.size();
    row.upper = delta_rho_upper(g, h, max_scale).value;
    for (int r : radii) {
      row.gap.push_back(distribution_gap(census(g, r), census(h, r)));
      row.lower.push_back(delta_rho_lower(g, h, r).value);
    }
  });
  CsvTable table({"pair", "n_g", "n_h", "radius", "census_gap", "gap_bound", "rho_lower", "rho_upper", "ok"});
  std::size_t violations = 0;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const auto& row = rows[t];
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const double bound = 3.0 * static_cast<double>(moore_bound(d, 2 * radii[i])) * row.upper;
      const bool ok = row.gap[i] <= bound + 1e-12 && row.lower[i] <= row.upper + 1e-12;
      violations += ok ? 0 : 1;
      table.row({fmt(t), fmt(row.n_g), fmt(row.n_h), std::to_string(radii[i]), fmt(row.gap[i]), fmt(bound),
                 fmt(row.lower[i]), fmt(row.upper), fmt(ok)});
    }
  }
  res.property_ok = violations == 0;
  res.files["strong_weak.csv"] = table.str();
  res.summary = {{"pairs", pairs}, {"violations", violations}};
  return res;
}

// --------------------------------------------------------- selfsimilar --

ExperimentResult run_selfsimilar(const Json& cfg) {
  ExperimentResult res;
  const int levels = param<int>(cfg, "levels", 10);
  const double target = param<double>(cfg, "target_ratio", 0.01);
  const auto spec = cfg.contains("spec") ? spec_from_json(read_json_file(cfg["spec"].get<std::string>()))
                                         : default_chain_spec();
  const auto built = self_similar_levels(spec, levels + 1);
  CsvTable table({"level", "vertices", "connecting", "ratio", "boundary", "boundary_in_connecting"});
  bool contained = true, decreasing = true;
  double prev = INFINITY;
  for (int n = 1; n <= levels; ++n) {
    const auto& lvl = built[static_cast<std::size_t>(n - 1)];
    auto ambient = graph_oracle(std::make_shared<const ColoredGraph>(built[static_cast<std::size_t>(n)].graph));
    std::vector<SiteId> sub;
    sub.reserve(lvl.graph.size());
    for (Vertex v = 0; v < lvl.graph.size(); ++v) sub.push_back(graph_site(v));
    const auto bd = boundary(ambient, sub);
    bool inside = true;
    for (const auto& id : bd)
      inside = inside && std::count(lvl.connecting.begin(), lvl.connecting.end(), static_cast<Vertex>(id.coords[0]));
    contained = contained && inside;
    const double ratio = static_cast<double>(lvl.connecting.size()) / static_cast<double>(lvl.graph.size());
    decreasing = decreasing && ratio < prev;
    prev = ratio;
    table.row({std::to_string(n), fmt(lvl.graph.size()), fmt(lvl.connecting.size()), fmt(ratio), fmt(bd.size()),
               fmt(inside)});
  }
  res.property_ok = contained && decreasing && prev < target;
  res.files["selfsimilar.csv"] = table.str();
  res.summary = {{"boundary_in_connecting", contained}, {"ratio_decreasing", decreasing}, {"final_ratio", prev}};
  return res;
}

// --------------------------------------------------------------- folner --

AdjacencyOracle oracle_named(const std::string& name) {
  if (name == "z1") return lattice_oracle(1);
  if (name == "z2") return lattice_oracle(2);
  if (name == "z3") return lattice_oracle(3);
  if (name == "glued-2d" || name == "glued-3d") return glued_lattice_oracle();
  if (name == "tree") return regular_tree_oracle();
  throw InputError("unknown ambient '" + name + "' (z1, z2, z3, glued-2d, glued-3d, tree)");
}

ExperimentResult run_folner(const Json& cfg) {
  ExperimentResult res;
  const auto name = required<std::string>(cfg, "ambient");
  const auto sizes = increasing_sizes(cfg, "sizes");
  const auto oracle = oracle_named(name);
  std::vector<std::vector<SiteId>> subs;
  if (name == "tree") {
    for (auto r : sizes) subs.push_back(oracle_ball(oracle, SiteId{4, {}}, static_cast<int>(r)).ids);
  } else if (name.starts_with("glued")) {
    for (auto& p : folner_boxes(oracle, name == "glued-2d" ? 2 : 3, sizes)) subs.push_back(std::move(p.ids));
  } else {
    for (auto n : sizes) subs.push_back(lattice_box(name[1] - '0', n).ids);
  }
  const auto profile = folner_profile(oracle, subs);
  CsvTable table({"size", "vertices", "boundary", "ratio"});
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const auto& r = profile.rows[i];
    table.row({std::to_string(sizes[i]), fmt(r.vertices), fmt(r.boundary), fmt(r.ratio)});
  }
  res.files["profile.csv"] = table.str();
  res.summary = {{"decreasing_to_zero", profile.decreasing_to_zero}};
  return res;
}

// ----------------------------------------------------- conjecture probe --

// sigma sending the big box vertex (I, J) to the copy of the small box
// covering its block.
std::vector<Vertex> block_tiling(std::size_t small, std::size_t big) {
  const std::size_t per_row = big / small;
  std::vector<Vertex> sigma(big * big);
  for (std::size_t i = 0; i < big; ++i)
    for (std::size_t j = 0; j < big; ++j) {
      const std::size_t copy = (i / small) * per_row + j / small;
      sigma[i * big + j] = static_cast<Vertex>(copy * small * small + (i % small) * small + j % small);
    }
  return sigma;
}

ExperimentResult run_conjecture_probe(const Json& cfg) {
  ExperimentResult res;
  const auto sizes = increasing_sizes(cfg, "sizes");
  const int radius = param<int>(cfg, "radius", 1);
  CsvTable table({"n_prev", "n", "scale_prev", "scale", "heuristic_upper", "tiling_upper", "rho_upper", "rho_lower"});
  std::vector<double> uppers;
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    const auto a = grid2d(static_cast<std::size_t>(sizes[i - 1]));
    const auto b = grid2d(static_cast<std::size_t>(sizes[i]));
    const auto heur = delta_rho_upper(a, b, 1);
    double tiling = INFINITY;
    std::string tiling_cell = "";
    if (sizes[i] % sizes[i - 1] == 0) {
      const auto per = static_cast<std::size_t>(sizes[i] / sizes[i - 1]);
      const auto copies = disjoint_copies(a, per * per);
      tiling = delta_under(copies, b, block_tiling(static_cast<std::size_t>(sizes[i - 1]),
                                                   static_cast<std::size_t>(sizes[i])));
      tiling_cell = fmt(tiling);
    }
    const double upper = std::min(heur.value, tiling);
    uppers.push_back(upper);
    const double lower = delta_rho_lower(a, b, radius).value;
    table.row({std::to_string(sizes[i - 1]), std::to_string(sizes[i]), fmt(heur.scale.first),
               fmt(heur.scale.second), fmt(heur.value), tiling_cell, fmt(upper), fmt(lower)});
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < uppers.size(); ++i) decreasing = decreasing && uppers[i] < uppers[i - 1];
  res.files["conjecture_probe.csv"] = table.str();
  res.summary = {{"upper_bounds_decreasing", decreasing}};
  return res;
}

}  // namespace

ColoredGraph random_colored_graph(std::mt19937_64& rng, std::size_t n, int d, int x_alphabet, int s_alphabet,
                                  double p) {
  std::vector<Color> colors(n);
  for (auto& c : colors) c = static_cast<Color>(rng() % static_cast<unsigned>(x_alphabet));
  std::vector<Edge> edges;
  std::vector<int> deg(n, 0);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      if (uniform01(rng) >= p || deg[u] >= d || deg[v] >= d) continue;
      ++deg[u];
      ++deg[v];
      edges.push_back({u, v, static_cast<Color>(rng() % static_cast<unsigned>(s_alphabet)),
                       static_cast<Color>(rng() % static_cast<unsigned>(s_alphabet))});
    }
  return ColoredGraph(d, x_alphabet, s_alphabet, std::move(colors), std::move(edges));
}

ColoredGraph build_family(const Json& spec) {
  const auto family = required<std::string>(spec, "family");
  if (family == "selfsimilar") {
    const auto s = spec.contains("spec") ? spec_from_json(read_json_file(spec["spec"].get<std::string>()))
                                         : default_chain_spec();
    return self_similar(s, required<int>(spec, "levels")).graph;
  }
  const auto n = required<std::int64_t>(spec, "n");
  if (n < 1) throw InputError("family size must be >= 1");
  const auto un = static_cast<std::size_t>(n);
  if (family == "path") return path_graph(un);
  if (family == "cycle") return cycle_graph(un);
  if (family == "grid2d") return grid2d(un);
  if (family == "grid3d") return grid3d(un);
  if (family == "random-regular")
    return random_regular(un, param<int>(spec, "degree", 3), required<std::uint64_t>(spec, "seed"));
  if (family == "glued-box") {
    std::vector<std::int64_t> sizes{n};
    return folner_boxes(glued_lattice_oracle(), param<int>(spec, "side", 2), sizes).front().graph;
  }
  throw InputError("unknown family '" + family + "'");
}

ExperimentResult run_experiment(const Json& config) {
  if (!config.is_object()) throw InputError("config must be a JSON object");
  const auto name = required<std::string>(config, "experiment");
  ExperimentResult res;
  if (name == "trace")
    res = run_trace(config);
  else if (name == "metric-axioms")
    res = run_metric_axioms(config);
  else if (name == "rankcheck")
    res = run_rankcheck(config);
  else if (name == "ids")
    res = run_ids(config);
  else if (name == "decompose")
    res = run_decompose(config);
  else if (name == "counterexample")
    res = run_counterexample(config);
  else if (name == "antiexpander")
    res = run_antiexpander(config);
  else if (name == "boundary-defect")
    res = run_boundary_defect(config);
  else if (name == "strong-weak")
    res = run_strong_weak(config);
  else if (name == "selfsimilar")
    res = run_selfsimilar(config);
  else if (name == "folner")
    res = run_folner(config);
  else if (name == "conjecture-probe")
    res = run_conjecture_probe(config);
  else
    throw InputError("unknown experiment '" + name + "'");
  res.name = name;
  res.summary["experiment"] = name;
  res.summary["property_ok"] = res.property_ok;
  return res;
}

void write_artifacts(const ExperimentResult& result, const std::filesystem::path& dir) {
  for (const auto& [file, content] : result.files) write_file_atomic(dir / file, content);
  write_file_atomic(dir / "summary.json", result.summary.dump(2) + "\n");
}

}  // namespace gslab
