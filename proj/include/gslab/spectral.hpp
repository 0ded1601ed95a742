#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gslab/operators.hpp"

namespace gslab {

inline constexpr double kRankTolerance = 1e-9;
inline constexpr double kBreakpointTolerance = 1e-9;

Eigen::MatrixXd to_dense(const OperatorKernel& kernel);

/// Ascending spectrum with multiplicity. Throws InputError unless the
/// matrix is symmetric to 1e-12 entrywise.
std::vector<double> eigenvalues(const Eigen::MatrixXd& a);
std::vector<double> eigenvalues(const OperatorKernel& kernel);

/// N(lambda) = #{eigenvalues <= lambda} / n.
class SpectralDistribution {
 public:
  explicit SpectralDistribution(std::vector<double> eigenvalues);

  const std::vector<double>& eigenvalues() const { return eigs_; }
  std::size_t size() const { return eigs_.size(); }
  double operator()(double lambda) const;
  /// lim N(mu) as mu increases to lambda: #{eigenvalues < lambda} / n.
  double left_limit(double lambda) const;

 private:
  std::vector<double> eigs_;
};

/// sup |N1 - N2| over the real line. Eigenvalues of the two spectra lying
/// within kBreakpointTolerance of each other are treated as one atom, so
/// roundoff in repeated eigenvalues does not create spurious steps.
double sup_distance(const SpectralDistribution& a, const SpectralDistribution& b);

/// (1/n) Tr(A^k) by repeated sparse multiplication of rows.
double moment_trace(const OperatorKernel& kernel, int k);
/// (1/n) sum lambda_i^k from the eigenvalues.
double moment_spectral(std::span<const double> eigenvalues, int k);
double moment_spectral(const OperatorKernel& kernel, int k);
std::vector<double> moments(const OperatorKernel& kernel, int k_max);

/// sum_alpha p_G(alpha) (A^k)(root, root), with the radius-(k s) patterns
/// from the census and A^k evaluated inside each canonical pattern using
/// the rule. Throws InputError when the rule misses a pattern.
double trace_via_patterns(const ColoredGraph& g, const InvariantRule& rule, int k);

struct RankCheck {
  double distance = 0.0;
  std::size_t rank = 0;
  std::size_t n = 0;
  bool bound_ok = false;
};

/// Eigenvalues with |lambda| > kRankTolerance.
std::size_t numerical_rank(const Eigen::MatrixXd& symmetric);

/// sup_distance(N_C, N_D) against rank(C - D) / n.
RankCheck rank_bound_check(const Eigen::MatrixXd& c, const Eigen::MatrixXd& d);
RankCheck rank_bound_check(const OperatorKernel& c, const OperatorKernel& d);

/// [min, max] of the Gershgorin discs.
std::pair<double, double> gershgorin_enclosure(const OperatorKernel& kernel);

/// `points` uniform samples over [lo, hi], plus the eigenvalues when there
/// are at most `breakpoint_cap` of them; sorted, duplicates removed.
std::vector<double> lambda_grid(std::pair<double, double> enclosure, int points, std::span<const double> eigenvalues,
                                std::size_t breakpoint_cap = 2000);

struct IdsRow {
  std::size_t n = 0;
  double sup_gap_prev = 0.0;        // 0 for the first element
  std::vector<double> moment_gaps;  // |m_k - m_k(prev)|, k = 1..k_max
};

struct IdsReport {
  std::vector<IdsRow> rows;
  std::vector<std::pair<double, double>> final_samples;  // (lambda, N_last(lambda))
  bool cauchy = false;                                   // sup gaps strictly decreasing
  std::vector<std::vector<double>> spectra;
};

/// Spectra of every kernel (eigensolves in parallel), consecutive sup and
/// moment gaps, and the last distribution on a 512-point grid over its
/// Gershgorin enclosure. Throws InputError for fewer than 2 kernels.
IdsReport ids_run(std::span<const OperatorKernel> kernels, int k_max);

struct BoundaryDefect {
  std::size_t rank_defect = 0;
  std::size_t boundary_size = 0;
  std::size_t n = 0;
  double distance = 0.0;
  bool bound_ok = false;
};

/// Compares restrict(rule) on the patch with the intrinsic Laplacian:
/// rank of the difference against |boundary|, and the sup distance against
/// |boundary| / n.
BoundaryDefect boundary_defect(const InvariantRule& rule, const AdjacencyOracle& ambient, const Patch& sub);

}  // namespace gslab
