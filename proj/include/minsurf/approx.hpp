#pragma once

#include <vector>

#include "minsurf/differentials.hpp"

namespace minsurf {

/// Chart change w = forward(z - p) normalizing the Hopf differential to dw^2.
/// `forward` has valuation 1 in z - p; `inverse` is its compositional inverse
/// and returns the displacement z - p as a series in w.
struct AdaptedCoordinate {
  LaurentSeries forward;
  LaurentSeries inverse;
};

/// forward = antiderivative(sqrt(q)), anchored to forward(p) = 0.  Requires
/// q nonvanishing at the base point.
AdaptedCoordinate adapt_coordinate(const LaurentSeries& q);

/// Power-series solution of w'' + (rho/4) w = 0 with w(0) = w0 and
/// w'(0) = w0p.  rho must be holomorphic at the base.
LaurentSeries hill_solve(const LaurentSeries& rho, Complex w0, Complex w0p,
                         int order);

/// Ratio w1/w2 of two independent Hill solutions.  Checks that the Wronskian
/// is a nonzero constant and that w2 does not vanish at the base point.
LaurentSeries gauss_from_solutions(const LaurentSeries& w1,
                                   const LaurentSeries& w2);

/// Degree-n approximant data in a Q-adapted chart.
struct Approximant {
  int n = 0;
  LaurentSeries gauss;  // G_n = w_{1,n} / w_{2,n}
  LaurentSeries rho_n;  // the truncated Hill potential, degree n-3
};

/// Truncate rho = 2{G, w} to degree n-3, re-solve Hill's equation with the
/// initial data of w2 = (G')^{-1/2} and w1 = G w2, and return G_n.  Requires
/// n >= 3 and G' nonzero at the base.
Approximant approximate(const LaurentSeries& g_adapted, int n, int order);

struct ApproximantReport {
  int n = 0;
  double sup_error = 0.0;  // sup over the sample grid of |X_n - X|
  double p_n_norm = 0.0;   // relative certificate that P_n of X_n vanishes
};

struct ConvergenceReport {
  Complex base;
  double trust_radius = 0.0;
  std::vector<ApproximantReport> entries;
};

/// Full pipeline: adapt the chart at p, build approximants for each degree in
/// `degrees`, and compare the immersions over `grid` (points in the adapted
/// chart; all must lie within the trust radius).
ConvergenceReport convergence_report(const WeierstrassData& w, Complex p,
                                     const std::vector<int>& degrees,
                                     const std::vector<Complex>& grid,
                                     int order);

}  // namespace minsurf
