#include "gslab/census.hpp"

#include <algorithm>
#include <cmath>

#include "gslab/canonical.hpp"
#include "gslab/error.hpp"
#include "gslab/parallel.hpp"

namespace gslab {

std::uint64_t moore_bound(int d, int r) {
  if (r < 0) throw InputError("moore_bound: negative radius");
  if (d <= 0 || r == 0) return 1;
  if (d == 1) return 2;
  if (d == 2) return 2 * static_cast<std::uint64_t>(r) + 1;
  std::uint64_t total = 1, layer = static_cast<std::uint64_t>(d);
  for (int i = 1; i <= r; ++i) {
    total += layer;
    layer *= static_cast<std::uint64_t>(d - 1);
  }
  return total;
}

double PatternDistribution::frequency(const std::string& code) const {
  auto it = counts.find(code);
  if (it == counts.end() || total == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(total);
}

CensusWithRepresentatives census_with_representatives(const ColoredGraph& g, int r) {
  if (r < 0) throw InputError("census radius must be non-negative");
  std::vector<std::string> codes(g.size());
  parallel_for(g.size(), [&](std::size_t x) { codes[x] = ball(g, static_cast<Vertex>(x), r).code(); });
  CensusWithRepresentatives out;
  out.distribution.radius = r;
  out.distribution.total = g.size();
  for (Vertex x = 0; x < g.size(); ++x) {
    auto [it, inserted] = out.distribution.counts.try_emplace(codes[x], 0);
    ++it->second;
    if (inserted) out.representative.emplace(codes[x], x);
  }
  return out;
}

PatternDistribution census(const ColoredGraph& g, int r) { return census_with_representatives(g, r).distribution; }

double distribution_gap(const PatternDistribution& p, const PatternDistribution& q) {
  if (p.radius != q.radius) {
    throw InputError("distribution_gap: radius mismatch (" + std::to_string(p.radius) + " vs " +
                     std::to_string(q.radius) + ")");
  }
  double gap = 0.0;
  for (const auto& [code, _] : p.counts) gap = std::max(gap, std::abs(p.frequency(code) - q.frequency(code)));
  for (const auto& [code, _] : q.counts) gap = std::max(gap, std::abs(p.frequency(code) - q.frequency(code)));
  return gap;
}

std::vector<GapRow> weak_convergence_report(std::span<const ColoredGraph> seq, int r_max) {
  if (seq.size() < 2) throw InputError("weak_convergence_report needs at least two graphs");
  std::vector<GapRow> rows;
  for (int r = 0; r <= r_max; ++r) {
    PatternDistribution prev = census(seq[0], r);
    for (std::size_t i = 1; i < seq.size(); ++i) {
      PatternDistribution cur = census(seq[i], r);
      rows.push_back({r, i, distribution_gap(prev, cur)});
      prev = std::move(cur);
    }
  }
  return rows;
}

}  // namespace gslab
