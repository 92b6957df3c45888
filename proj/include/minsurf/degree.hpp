#pragma once

#include <array>
#include <vector>

#include "minsurf/differentials.hpp"

namespace minsurf {

/// One monomial of a weighted-homogeneous relation: the parts are the degrees
/// of the entropy differentials entering the product (each in [2, n-1],
/// summing to n, listed with the largest part first).
struct RelationTerm {
  std::vector<int> partition;
  Complex coefficient;
};

/// The algebraic type of a surface: the smallest n with
///   P_n + sum_a c_a * prod_{j in a} P_j = 0,
/// monic in P_n.  An empty term list means P_n itself vanishes.
struct AlgebraicType {
  int degree = 0;
  std::vector<RelationTerm> terms;
  double residual = 0.0;
  double condition = 0.0;
};

/// Partitions of n into parts from {2, ..., n-1}, largest part first,
/// enumerated with the largest leading part first.
std::vector<std::vector<int>> weighted_monomials(int n);

/// Smallest degree n <= n_max carrying a weighted-homogeneous relation whose
/// least-squares residual (relative to the largest stacked coefficient) stays
/// below tol across all base points.
AlgebraicType detect_degree(const WeierstrassData& w,
                            const std::vector<Complex>& base_points, int n_max,
                            int order, double tol);

/// Re-evaluate a detected relation at fresh probe points; returns the largest
/// relative residual seen.
double verify_relation(const AlgebraicType& t, const WeierstrassData& w,
                       const std::vector<Complex>& probes, int order);

/// Scan a 5x5 grid over the chart rectangle, drop poles and near-umbilic
/// points, and keep the `count` points whose local expansions are
/// best-conditioned (largest estimated convergence radius).
std::vector<Complex> select_base_points(const WeierstrassData& w,
                                        const std::array<double, 4>& rect,
                                        int count = 3);

enum class UmbilicFamily { kDegreeFour, kDegreeFive };

/// Coefficient of the single-term relation at an umbilic of order n:
/// degree four: P_4 + a_n P_2^2 = 0 with a_n = 12 (n+2)^2 / (3n^2 + 4n);
/// degree five: P_5 + a_n P_3 P_2 = 0 with a_n = 24 (n+2)^2 / ((3n+4) n).
double umbilic_coefficient(int n, UmbilicFamily family);

}  // namespace minsurf
