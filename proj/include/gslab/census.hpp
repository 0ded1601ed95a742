#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gslab/colored_graph.hpp"

namespace gslab {

/// Upper bound on the number of vertices of a connected graph with degree
/// bound d and radius r around some vertex (Moore bound):
/// 1 + d((d-1)^r - 1)/(d-2) for d >= 3, 2r+1 for d = 2.
std::uint64_t moore_bound(int d, int r);

/// Empirical distribution of radius-r rooted neighbourhood classes:
/// counts[code] = number of vertices whose r-ball has that canonical code.
struct PatternDistribution {
  int radius = 0;
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;

  double frequency(const std::string& code) const;
};

PatternDistribution census(const ColoredGraph& g, int r);

/// Census that also records, for each class, the lowest-index vertex
/// realising it.
struct CensusWithRepresentatives {
  PatternDistribution distribution;
  std::map<std::string, Vertex> representative;
};
CensusWithRepresentatives census_with_representatives(const ColoredGraph& g, int r);

/// sup over the union of codes of |p(code) - q(code)|.
double distribution_gap(const PatternDistribution& p, const PatternDistribution& q);

struct GapRow {
  int radius = 0;
  std::size_t index = 0;  // gap between seq[index-1] and seq[index]
  double gap = 0.0;
};

/// Gaps between consecutive censuses for every radius 0..r_max.
std::vector<GapRow> weak_convergence_report(std::span<const ColoredGraph> seq, int r_max);

}  // namespace gslab
