#include "gslab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "gslab/canonical.hpp"
#include "gslab/census.hpp"
#include "gslab/decomposition.hpp"
#include "gslab/error.hpp"
#include "gslab/parallel.hpp"

namespace gslab {
namespace {

using SparseRow = std::vector<std::pair<Vertex, double>>;

// u <- u A, with rows supplied on demand.
template <typename RowFn>
std::map<Vertex, double> step(const std::map<Vertex, double>& u, RowFn&& row_of) {
  std::map<Vertex, double> out;
  for (const auto& [x, ux] : u)
    for (const auto& [y, a] : row_of(x)) out[y] += ux * a;
  return out;
}

template <typename RowFn>
double diagonal_power(Vertex x, int k, RowFn&& row_of) {
  std::map<Vertex, double> u{{x, 1.0}};
  for (int i = 0; i < k; ++i) u = step(u, row_of);
  auto it = u.find(x);
  return it == u.end() ? 0.0 : it->second;
}

}  // namespace

Eigen::MatrixXd to_dense(const OperatorKernel& kernel) {
  const auto n = static_cast<Eigen::Index>(kernel.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Vertex x = 0; x < kernel.size(); ++x)
    for (const auto& [y, v] : kernel.rows[x]) a(x, y) += v;
  return a;
}

std::vector<double> eigenvalues(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw InputError("eigenvalues: matrix is not square");
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = i + 1; j < a.cols(); ++j)
      if (std::abs(a(i, j) - a(j, i)) > 1e-12)
        throw InputError("eigenvalues: kernel is not symmetric at (" + std::to_string(i) + ", " +
                         std::to_string(j) + ")");
  if (a.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalues: solver did not converge");
  std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + a.rows());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> eigenvalues(const OperatorKernel& kernel) { return eigenvalues(to_dense(kernel)); }

SpectralDistribution::SpectralDistribution(std::vector<double> eigenvalues) : eigs_(std::move(eigenvalues)) {
  if (eigs_.empty()) throw InputError("spectral distribution of an empty spectrum");
  std::sort(eigs_.begin(), eigs_.end());
}

double SpectralDistribution::operator()(double lambda) const {
  const auto count = std::upper_bound(eigs_.begin(), eigs_.end(), lambda) - eigs_.begin();
  return static_cast<double>(count) / static_cast<double>(eigs_.size());
}

double SpectralDistribution::left_limit(double lambda) const {
  const auto count = std::lower_bound(eigs_.begin(), eigs_.end(), lambda) - eigs_.begin();
  return static_cast<double>(count) / static_cast<double>(eigs_.size());
}

double sup_distance(const SpectralDistribution& a, const SpectralDistribution& b) {
  double best = 0.0;
  for (const auto* eigs : {&a.eigenvalues(), &b.eigenvalues()}) {
    for (double p : *eigs) {
      best = std::max(best, std::abs(a(p + kBreakpointTolerance) - b(p + kBreakpointTolerance)));
      best = std::max(best, std::abs(a.left_limit(p - kBreakpointTolerance) - b.left_limit(p - kBreakpointTolerance)));
    }
  }
  return best;
}

double moment_trace(const OperatorKernel& kernel, int k) {
  if (k < 0) throw InputError("moment order must be non-negative");
  const std::size_t n = kernel.size();
  if (n == 0) throw InputError("moment of an empty kernel");
  std::vector<double> diag(n);
  auto row_of = [&](Vertex x) -> const SparseRow& { return kernel.rows[x]; };
  parallel_for(n, [&](std::size_t x) { diag[x] = diagonal_power(static_cast<Vertex>(x), k, row_of); });
  double sum = 0.0;
  for (double v : diag) sum += v;
  return sum / static_cast<double>(n);
}

double moment_spectral(std::span<const double> eigenvalues, int k) {
  if (k < 0) throw InputError("moment order must be non-negative");
  if (eigenvalues.empty()) throw InputError("moment of an empty spectrum");
  double sum = 0.0;
  for (double l : eigenvalues) sum += std::pow(l, k);
  return sum / static_cast<double>(eigenvalues.size());
}

double moment_spectral(const OperatorKernel& kernel, int k) {
  const auto eigs = eigenvalues(kernel);
  return moment_spectral(eigs, k);
}

std::vector<double> moments(const OperatorKernel& kernel, int k_max) {
  std::vector<double> out;
  for (int k = 0; k <= k_max; ++k) out.push_back(moment_trace(kernel, k));
  return out;
}

double trace_via_patterns(const ColoredGraph& g, const InvariantRule& rule, int k) {
  if (k < 0) throw InputError("moment order must be non-negative");
  if (g.size() == 0) throw InputError("trace of an empty graph");
  if (k == 0) return 1.0;
  const auto dist = census(g, k * rule.radius);
  std::vector<std::pair<std::string, std::uint64_t>> classes(dist.counts.begin(), dist.counts.end());
  std::vector<double> value(classes.size());
  std::vector<std::string> missing(classes.size());
  parallel_for(classes.size(), [&](std::size_t c) {
    const auto pattern = decode_code(classes[c].first).graph;
    std::unordered_map<Vertex, SparseRow> cache;
    auto row_of = [&](Vertex z) -> const SparseRow& {
      auto it = cache.find(z);
      if (it != cache.end()) return it->second;
      SparseRow row;
      auto b = ball(pattern, z, rule.radius);
      auto entry = rule.table.find(b.code());
      if (entry == rule.table.end() || entry->second.size() != b.graph.size()) {
        if (missing[c].empty()) missing[c] = b.code();
      } else {
        for (std::size_t i = 0; i < entry->second.size(); ++i)
          if (entry->second[i] != 0.0) row.emplace_back(b.origin[b.canon.order[i]], entry->second[i]);
      }
      return cache.emplace(z, std::move(row)).first->second;
    };
    value[c] = diagonal_power(0, k, row_of);
  });
  for (const auto& code : missing)
    if (!code.empty()) throw InputError("rule has no entry for pattern " + to_hex(code));
  double sum = 0.0;
  for (std::size_t c = 0; c < classes.size(); ++c) sum += static_cast<double>(classes[c].second) * value[c];
  return sum / static_cast<double>(g.size());
}

std::size_t numerical_rank(const Eigen::MatrixXd& symmetric) {
  std::size_t rank = 0;
  for (double l : eigenvalues(symmetric))
    if (std::abs(l) > kRankTolerance) ++rank;
  return rank;
}

RankCheck rank_bound_check(const Eigen::MatrixXd& c, const Eigen::MatrixXd& d) {
  if (c.rows() != d.rows() || c.cols() != d.cols()) throw InputError("rank_bound_check: dimension mismatch");
  RankCheck out;
  out.n = static_cast<std::size_t>(c.rows());
  out.distance = sup_distance(SpectralDistribution(eigenvalues(c)), SpectralDistribution(eigenvalues(d)));
  out.rank = numerical_rank(c - d);
  out.bound_ok = out.distance <= static_cast<double>(out.rank) / static_cast<double>(out.n) + 1e-12;
  return out;
}

RankCheck rank_bound_check(const OperatorKernel& c, const OperatorKernel& d) {
  return rank_bound_check(to_dense(c), to_dense(d));
}

std::pair<double, double> gershgorin_enclosure(const OperatorKernel& kernel) {
  if (kernel.size() == 0) throw InputError("enclosure of an empty kernel");
  double lo = INFINITY, hi = -INFINITY;
  for (Vertex x = 0; x < kernel.size(); ++x) {
    double diag = 0.0, radius = 0.0;
    for (const auto& [y, v] : kernel.rows[x]) {
      if (y == x)
        diag += v;
      else
        radius += std::abs(v);
    }
    lo = std::min(lo, diag - radius);
    hi = std::max(hi, diag + radius);
  }
  return {lo, hi};
}

std::vector<double> lambda_grid(std::pair<double, double> enclosure, int points, std::span<const double> eigenvalues,
                                std::size_t breakpoint_cap) {
  std::vector<double> grid;
  const auto [lo, hi] = enclosure;
  for (int i = 0; i < points; ++i)
    grid.push_back(points == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1));
  if (eigenvalues.size() <= breakpoint_cap) grid.insert(grid.end(), eigenvalues.begin(), eigenvalues.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

IdsReport ids_run(std::span<const OperatorKernel> kernels, int k_max) {
  if (kernels.size() < 2) throw InputError("ids_run needs at least two kernels");
  IdsReport report;
  report.spectra.resize(kernels.size());
  parallel_for(kernels.size(), [&](std::size_t i) { report.spectra[i] = eigenvalues(kernels[i]); });
  std::vector<SpectralDistribution> dists;
  for (const auto& s : report.spectra) dists.emplace_back(s);
  std::vector<std::vector<double>> mom(kernels.size());
  for (std::size_t i = 0; i < kernels.size(); ++i)
    for (int k = 1; k <= k_max; ++k) mom[i].push_back(moment_spectral(report.spectra[i], k));
  for (std::size_t i = 0; i < kernels.size(); ++i) {
    IdsRow row;
    row.n = kernels[i].size();
    if (i > 0) {
      row.sup_gap_prev = sup_distance(dists[i - 1], dists[i]);
      for (int k = 0; k < k_max; ++k) row.moment_gaps.push_back(std::abs(mom[i][k] - mom[i - 1][k]));
    } else {
      row.moment_gaps.assign(static_cast<std::size_t>(k_max), 0.0);
    }
    report.rows.push_back(std::move(row));
  }
  report.cauchy = true;
  for (std::size_t i = 2; i < report.rows.size(); ++i)
    report.cauchy = report.cauchy && report.rows[i].sup_gap_prev < report.rows[i - 1].sup_gap_prev;
  const auto grid = lambda_grid(gershgorin_enclosure(kernels.back()), 512, report.spectra.back());
  for (double l : grid) report.final_samples.emplace_back(l, dists.back()(l));
  return report;
}

BoundaryDefect boundary_defect(const InvariantRule& rule, const AdjacencyOracle& ambient, const Patch& sub) {
  const auto restricted = to_dense(restrict(rule, ambient, sub));
  const auto intrinsic = to_dense(laplacian(sub.graph));
  BoundaryDefect out;
  out.n = sub.ids.size();
  out.rank_defect = numerical_rank(restricted - intrinsic);
  out.boundary_size = boundary(ambient, sub.ids).size();
  out.distance = sup_distance(SpectralDistribution(eigenvalues(restricted)), SpectralDistribution(eigenvalues(intrinsic)));
  const double bound = static_cast<double>(out.boundary_size) / static_cast<double>(out.n);
  out.bound_ok = out.rank_defect <= out.boundary_size && out.distance <= bound + 1e-12;
  return out;
}

}  // namespace gslab
