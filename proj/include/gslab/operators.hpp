#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gslab/colored_graph.hpp"
#include "gslab/oracle.hpp"

namespace gslab {

/// Sparse real kernel A(x, y) on the vertices of a graph. rows[x] lists the
/// stored entries (y, value) sorted by y. A(x, y) = 0 whenever
/// d(x, y) > range.
struct OperatorKernel {
  std::shared_ptr<const ColoredGraph> graph;
  int range = 0;
  std::vector<std::vector<std::pair<Vertex, double>>> rows;
  double bound_m = 0.0;

  std::size_t size() const { return rows.size(); }
  double at(Vertex x, Vertex y) const;
};

/// Invariant functions keyed by binary canonical code of radius-`radius`
/// patterns; values[i] is f_alpha at canonical position i (root is 0).
struct InvariantRule {
  int radius = 0;
  std::map<std::string, std::vector<double>> table;
};

/// Throws InputError if some f_alpha has the wrong length or is not
/// constant on the orbits of the rooted colored automorphism group.
void validate_rule(const InvariantRule& rule);

/// Computes f_alpha from the canonically labeled pattern (root = vertex 0).
using PatternFunction = std::function<std::vector<double>(const ColoredGraph&)>;

/// deg(root) at the root, -1 on the root's neighbours, 0 elsewhere.
PatternFunction laplacian_function();
/// Values in [-1, 1] hashed from (seed, code, orbit); orbit-invariant by
/// construction.
PatternFunction random_function(std::uint64_t seed);

/// Rule table for every radius-r pattern occurring in the given graphs.
InvariantRule tabulate_rule(int radius, const PatternFunction& f, std::span<const ColoredGraph> graphs);
/// Same, for the ambient balls around the given sites.
InvariantRule tabulate_rule(int radius, const PatternFunction& f, const AdjacencyOracle& ambient,
                            std::span<const SiteId> sites);

OperatorKernel laplacian(std::shared_ptr<const ColoredGraph> g);
OperatorKernel laplacian(const ColoredGraph& g);
OperatorKernel identity_kernel(std::shared_ptr<const ColoredGraph> g);

/// A(x, y) = f_alpha(position of y) with alpha the pattern of the radius-s
/// ball at x. Throws InputError naming the hex code of a missing pattern.
OperatorKernel kernel_from_rule(std::shared_ptr<const ColoredGraph> g, const InvariantRule& rule);
OperatorKernel kernel_from_rule(const ColoredGraph& g, const InvariantRule& rule);

/// Both kernels must live on the same graph (InputError otherwise).
OperatorKernel add(const OperatorKernel& a, const OperatorKernel& b);
OperatorKernel multiply(const OperatorKernel& a, const OperatorKernel& b);
OperatorKernel adjoint(const OperatorKernel& a);
OperatorKernel scale(const OperatorKernel& a, double c);

/// Finite volume approximation p A i: entries A(x, y) for x, y in the
/// patch, with patterns read from ambient balls.
OperatorKernel restrict(const InvariantRule& rule, const AdjacencyOracle& ambient, const Patch& sub);

/// Reads the rule back off a kernel. Throws InputError when two vertices
/// with the same radius-s pattern disagree, when a row is not orbit
/// invariant, or when a row leaves its ball.
InvariantRule extract_rule(const ColoredGraph& g, const OperatorKernel& kernel, int s);

/// True iff rows agree under the canonical identification of equal
/// radius-s patterns (and are orbit invariant).
bool check_pattern_invariance(const ColoredGraph& g, const OperatorKernel& kernel, int s);
/// Same, with patterns taken from ambient balls around the patch sites.
bool check_pattern_invariance(const AdjacencyOracle& ambient, const Patch& sub, const OperatorKernel& kernel, int s);

}  // namespace gslab
