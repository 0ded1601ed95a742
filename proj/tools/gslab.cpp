#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "gslab/canonical.hpp"
#include "gslab/census.hpp"
#include "gslab/decomposition.hpp"
#include "gslab/error.hpp"
#include "gslab/experiments.hpp"
#include "gslab/metrics.hpp"

using namespace gslab;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;

void emit(const Json& j, const std::string& out) {
  if (out.empty())
    std::cout << j.dump(2) << '\n';
  else
    write_file_atomic(out, j.dump(2) + "\n");
}

int finish(const ExperimentResult& res, const std::string& out_dir) {
  write_artifacts(res, out_dir.empty() ? "out/" + res.name : out_dir);
  std::cout << res.summary.dump(2) << '\n';
  return res.property_ok ? 0 : kExitViolation;
}

Json family_json(const std::string& family, std::int64_t n, int degree, std::uint64_t seed, int levels,
                 const std::string& spec, int side) {
  Json j{{"family", family}, {"n", n}, {"degree", degree}, {"seed", seed}, {"levels", levels}, {"side", side}};
  if (!spec.empty()) j["spec"] = spec;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gslab: colored graph sequences, pattern statistics and spectral distributions"};
  app.require_subcommand(1);
  std::function<int()> action;

  // generate
  std::string family, spec_file, out, input, a_file, b_file, mode = "exact", out_dir, rule = "laplacian", config_file,
                                                                  reference, generator;
  std::int64_t n = 10;
  int degree = 3, levels = 1, side = 2, radius = 1, max_scale = 4, k_max = 4, trials = 1000, r_max = 20;
  std::uint64_t seed = 1;
  double epsilon = 0.1;
  std::size_t k_bound = 0;
  std::vector<std::int64_t> sizes, sizes2, sizes3;

  auto* gen = app.add_subcommand("generate", "Write a generated graph as JSON");
  gen->add_option("--family", family, "path|cycle|grid2d|grid3d|random-regular|selfsimilar|glued-box")->required();
  gen->add_option("--n", n, "Size parameter");
  gen->add_option("--degree", degree, "Degree for random-regular");
  gen->add_option("--seed", seed, "Seed for random-regular");
  gen->add_option("--levels", levels, "Level for selfsimilar");
  gen->add_option("--spec", spec_file, "Self-similar spec JSON")->check(CLI::ExistingFile);
  gen->add_option("--side", side, "2 or 3 for glued-box");
  gen->add_option("--out", out, "Output path (stdout if omitted)");
  gen->callback([&] {
    action = [&] {
      emit(graph_to_json(build_family(family_json(family, n, degree, seed, levels, spec_file, side))), out);
      return 0;
    };
  });

  auto* cen = app.add_subcommand("census", "Radius-r pattern frequencies of a graph");
  cen->add_option("--input", input, "Graph JSON")->required()->check(CLI::ExistingFile);
  cen->add_option("--radius", radius, "Pattern radius")->required()->check(CLI::NonNegativeNumber);
  cen->add_option("--out", out, "Output path (stdout if omitted)");
  cen->callback([&] {
    action = [&] {
      const auto g = graph_from_json(read_json_file(input));
      const auto dist = census(g, radius);
      Json patterns = Json::array();
      for (const auto& [code, count] : dist.counts) {
        const auto decoded = decode_code(code);
        patterns.push_back({{"code", to_hex(code)},
                            {"vertices", decoded.graph.size()},
                            {"root_color", decoded.graph.color(0)},
                            {"count", count},
                            {"frequency", dist.frequency(code)}});
      }
      emit(Json{{"radius", radius}, {"total", dist.total}, {"patterns", patterns}}, out);
      return 0;
    };
  });

  auto* met = app.add_subcommand("metric", "Distance between two graphs");
  met->add_option("--a", a_file, "First graph JSON")->required()->check(CLI::ExistingFile);
  met->add_option("--b", b_file, "Second graph JSON")->required()->check(CLI::ExistingFile);
  met->add_option("--mode", mode, "delta|exact|heuristic|rho-upper|rho-lower")
      ->check(CLI::IsMember({"delta", "exact", "heuristic", "rho-upper", "rho-lower"}));
  met->add_option("--radius", radius, "Radius for rho-lower")->check(CLI::NonNegativeNumber);
  met->add_option("--max-scale", max_scale, "Largest blow-up factor for rho-upper")->check(CLI::PositiveNumber);
  met->add_option("--out", out, "Output path (stdout if omitted)");
  met->callback([&] {
    action = [&] {
      const auto g = graph_from_json(read_json_file(a_file));
      const auto h = graph_from_json(read_json_file(b_file));
      MetricResult r;
      if (mode == "delta")
        r.value = delta(g, h);
      else if (mode == "exact")
        r = delta_s_exact(g, h);
      else if (mode == "heuristic")
        r = delta_s_heuristic(g, h);
      else if (mode == "rho-upper")
        r = delta_rho_upper(g, h, max_scale);
      else
        r = delta_rho_lower(g, h, radius);
      Json j{{"value", r.value}, {"kind", to_string(r.kind)}, {"scale", {r.scale.first, r.scale.second}}};
      if (r.witness) j["witness"] = *r.witness;
      if (r.witness_code) j["witness_code"] = to_hex(*r.witness_code);
      emit(j, out);
      return 0;
    };
  });

  auto* dec = app.add_subcommand("decompose", "Antiexpander decomposition certificate");
  dec->add_option("--input", input, "Graph JSON")->required()->check(CLI::ExistingFile);
  dec->add_option("--epsilon", epsilon, "Edge budget fraction")->required()->check(CLI::PositiveNumber);
  dec->add_option("--k-max", k_bound, "Verify components have at most this many vertices");
  dec->add_option("--out", out, "Certificate path (stdout if omitted)");
  dec->callback([&] {
    action = [&] {
      const auto g = graph_from_json(read_json_file(input));
      const auto cert = decompose_by_growth(g, epsilon);
      emit(certificate_to_json(cert), out);
      const bool ok = verify_certificate(g, cert, epsilon, k_bound ? k_bound : cert.K);
      if (!ok) std::cerr << "certificate does not verify\n";
      return ok ? 0 : kExitViolation;
    };
  });

  auto* fol = app.add_subcommand("folner", "Boundary ratios of nested boxes in an ambient graph");
  fol->add_option("--generator", generator, "z1|z2|z3|glued-2d|glued-3d|tree")->required();
  fol->add_option("--sizes", sizes, "Strictly increasing sizes (box side or ball radius)")->required();
  fol->add_option("--out", out, "profile.csv path (stdout if omitted)");
  fol->callback([&] {
    action = [&] {
      const auto res = run_experiment({{"experiment", "folner"}, {"ambient", generator}, {"sizes", sizes}});
      if (out.empty())
        std::cout << res.files.at("profile.csv");
      else
        write_file_atomic(out, res.files.at("profile.csv"));
      return 0;
    };
  });

  auto* ids = app.add_subcommand("ids", "Spectral distributions along a graph family");
  ids->add_option("--family", family, "Graph family")->required();
  ids->add_option("--sizes", sizes, "Strictly increasing sizes (levels for selfsimilar)")->required();
  ids->add_option("--rule", rule, "\"laplacian\" or a rule JSON file");
  ids->add_option("--k-max", k_max, "Highest moment")->check(CLI::NonNegativeNumber);
  ids->add_option("--reference", reference, "Closed form to compare against: path")->check(CLI::IsMember({"path"}));
  ids->add_option("--degree", degree, "Degree for random-regular");
  ids->add_option("--seed", seed, "Seed for random-regular");
  ids->add_option("--out-dir", out_dir, "Artifact directory");
  ids->callback([&] {
    action = [&] {
      Json cfg{{"experiment", "ids"},
               {"generator", {{"family", family}, {"degree", degree}, {"seed", seed}}},
               {"sizes", sizes},
               {"rule", rule},
               {"k_max", k_max}};
      if (!reference.empty()) cfg["reference"] = reference;
      return finish(run_experiment(cfg), out_dir);
    };
  });

  auto* cex = app.add_subcommand("counterexample", "2D vs 3D sides of the glued lattice");
  sizes2 = {30, 40};
  sizes3 = {10, 12};
  cex->add_option("--sizes-2d", sizes2, "Box sides on the square side");
  cex->add_option("--sizes-3d", sizes3, "Box sides on the cubic side");
  cex->add_option("--out-dir", out_dir, "Artifact directory");
  cex->callback([&] {
    action = [&] {
      return finish(run_experiment({{"experiment", "counterexample"}, {"sizes_2d", sizes2}, {"sizes_3d", sizes3}}),
                    out_dir);
    };
  });

  auto* ss = app.add_subcommand("selfsimilar", "Boundary and connecting sets of a self-similar sequence");
  ss->add_option("--levels", levels, "Number of levels")->check(CLI::PositiveNumber);
  ss->add_option("--spec", spec_file, "Self-similar spec JSON (default chain if omitted)")->check(CLI::ExistingFile);
  ss->add_option("--out-dir", out_dir, "Artifact directory");
  ss->callback([&] {
    action = [&] {
      Json cfg{{"experiment", "selfsimilar"}, {"levels", levels}};
      if (!spec_file.empty()) cfg["spec"] = spec_file;
      return finish(run_experiment(cfg), out_dir);
    };
  });

  auto* rc = app.add_subcommand("rankcheck", "Random low-rank perturbations against the rank bound");
  rc->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
  rc->add_option("--n", n, "Matrix dimension")->check(CLI::PositiveNumber);
  rc->add_option("--r-max", r_max, "Largest perturbation rank")->check(CLI::PositiveNumber);
  rc->add_option("--seed", seed, "Seed")->required();
  rc->add_option("--out-dir", out_dir, "Artifact directory");
  rc->callback([&] {
    action = [&] {
      return finish(
          run_experiment({{"experiment", "rankcheck"}, {"trials", trials}, {"n", n}, {"r_max", r_max}, {"seed", seed}}),
          out_dir);
    };
  });

  auto* cp = app.add_subcommand("conjecture-probe", "Upper and lower rho bounds between consecutive grid boxes");
  cp->add_option("--sizes", sizes, "Strictly increasing grid sides")->required();
  cp->add_option("--radius", radius, "Census radius for the lower bound")->check(CLI::NonNegativeNumber);
  cp->add_option("--out-dir", out_dir, "Artifact directory");
  cp->callback([&] {
    action = [&] {
      return finish(run_experiment({{"experiment", "conjecture-probe"}, {"sizes", sizes}, {"radius", radius}}),
                    out_dir);
    };
  });

  auto* run = app.add_subcommand("run", "Run an experiment from a JSON config");
  run->add_option("--config", config_file, "Config JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--out-dir", out_dir, "Artifact directory (overrides output_dir in the config)");
  run->callback([&] {
    action = [&] {
      const auto cfg = read_json_file(config_file);
      std::string dir = out_dir;
      if (dir.empty() && cfg.is_object() && cfg.contains("output_dir")) dir = cfg["output_dir"].get<std::string>();
      return finish(run_experiment(cfg), dir);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
