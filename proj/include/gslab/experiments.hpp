#pragma once

#include <filesystem>
#include <map>
#include <random>
#include <string>

#include "gslab/io.hpp"

namespace gslab {

/// Artifacts of one experiment: CSV/JSON file contents keyed by file name,
/// a JSON summary, and whether every checked property held.
struct ExperimentResult {
  std::string name;
  std::map<std::string, std::string> files;
  Json summary;
  bool property_ok = true;
};

/// Dispatches on config["experiment"]: trace, metric-axioms, rankcheck,
/// ids, decompose, counterexample, antiexpander, boundary-defect,
/// strong-weak, selfsimilar, folner, conjecture-probe. Throws InputError on
/// unknown experiments or bad parameters.
ExperimentResult run_experiment(const Json& config);

/// Writes every file plus summary.json under `dir`, each atomically.
void write_artifacts(const ExperimentResult& result, const std::filesystem::path& dir);

/// Graph from {"family": path|cycle|grid2d|grid3d|random-regular|selfsimilar|glued-box, ...}:
/// "n" for the lattice families, "n" + "degree" + "seed" for random-regular,
/// "levels" (+ optional "spec" file) for selfsimilar, "n" + "side" for glued-box.
ColoredGraph build_family(const Json& spec);

/// Random colored graph: each pair joined with probability p while both
/// ends are below degree d; colors uniform.
ColoredGraph random_colored_graph(std::mt19937_64& rng, std::size_t n, int d, int x_alphabet, int s_alphabet,
                                  double p);

}  // namespace gslab
