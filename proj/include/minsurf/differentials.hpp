#pragma once

#include <string>
#include <vector>

#include "minsurf/expr.hpp"
#include "minsurf/series.hpp"

namespace minsurf {

/// Weierstrass data of a minimal immersion: Gauss map G and height
/// differential eta = h dz, both meromorphic expressions in one chart.
struct WeierstrassData {
  Expr gauss;
  Expr eta;
  std::string label;
};

/// A degree-ell differential s(z) dz^ell, stored as the Laurent series of s
/// about a base point.
struct Differential {
  int ell = 0;
  LaurentSeries s;
};

/// Chart data of the conformal connection induced by the Hopf differential.
struct ConnectionChart {
  LaurentSeries gamma;  // q'/(2q)
};

/// Hopf differential coefficient q = -(G'/G) h expanded about p.
LaurentSeries hopf(const WeierstrassData& w, Complex p, int order);

/// gamma = q'/(2q).  Fails when q is declared zero (planar data).
ConnectionChart connection(const LaurentSeries& q);

/// Classical Schwarzian derivative {f, z} = f'''/f' - (3/2)(f''/f')^2 as a
/// Laurent series; poles at critical points of f come out as negative
/// valuation.  Fails when f' is declared zero.
LaurentSeries schwarzian(const LaurentSeries& f);

/// P_2 = ({G, z} + (5/8)(q'/q)^2 - (1/2) q''/q) dz^2.
Differential entropy_p2(const LaurentSeries& g, const LaurentSeries& q);

/// P_{ell+1} = (p' - ell * gamma * p) dz^{ell+1}.
Differential entropy_next(const Differential& p, const ConnectionChart& chart);

/// The sequence P_2, ..., P_ell_max about p, each truncated to `order`
/// stored coefficients.
std::vector<Differential> entropy_sequence(const WeierstrassData& w, Complex p,
                                           int ell_max, int order);

/// Same pipeline starting from already-expanded G and q series.
std::vector<Differential> entropy_sequence_series(const LaurentSeries& g,
                                                  const LaurentSeries& q,
                                                  int ell_max);

/// Coefficient of (z - p)^{-ell}.  Fails when the pole order exceeds ell.
Complex residue(const Differential& p);

/// Closed-form residue of P_ell at an umbilic where the Hopf differential
/// vanishes to order n: (-1/2)^{ell+1} (ell-1)! (n+2)^{ell-2} (3n^2 + 4n).
Complex residue_formula(int ell, int n);

/// Vanishing order of q at its base point; 0 when q(base) != 0.
int umbilic_order(const LaurentSeries& q);

/// Flat-chart Moebius-covariant Schwarzian sequence: s_2 = {f, z} and
/// s_{ell+1} = s_ell' - ell * s_ell * (f''/f').  Returns s_2 .. s_ell_max.
std::vector<LaurentSeries> moebius_schwarzian_seq(const LaurentSeries& f,
                                                  int ell_max);

}  // namespace minsurf
