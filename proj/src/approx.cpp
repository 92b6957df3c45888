#include "minsurf/approx.hpp"

#include <algorithm>
#include <cmath>

#include "minsurf/errors.hpp"
#include "minsurf/surface.hpp"

namespace minsurf {

namespace {

// Largest coefficient-wise deviation between two series over their common
// window, relative to the larger computation scale.
double rel_deviation(const LaurentSeries& a, const LaurentSeries& b) {
  double scale = std::max(a.scale(), b.scale());
  int lo = std::min(a.declared_zero() ? 0 : a.valuation(),
                    b.declared_zero() ? 0 : b.valuation());
  int top = std::min(a.declared_zero() ? 0 : a.top_index(),
                     b.declared_zero() ? 0 : b.top_index());
  double dev = 0.0;
  for (int idx = lo; idx <= top; ++idx)
    dev = std::max(dev, std::abs(a.coeff(idx) - b.coeff(idx)));
  return dev / scale;
}

}  // namespace

AdaptedCoordinate adapt_coordinate(const LaurentSeries& q) {
  if (q.declared_zero() || q.valuation() != 0)
    throw NumericError(
        "adapted coordinate requires the Hopf differential nonzero at the base");
  LaurentSeries forward = antiderivative(sqrt_series(q));
  return AdaptedCoordinate{forward, revert(forward)};
}

LaurentSeries hill_solve(const LaurentSeries& rho, Complex w0, Complex w0p,
                         int order) {
  if (!rho.declared_zero() && rho.valuation() < 0)
    throw NumericError("Hill potential must be holomorphic at the base");
  if (order < 2) throw NumericError("Hill solution needs at least two terms");
  std::vector<Complex> c(order, Complex(0.0));
  c[0] = w0;
  c[1] = w0p;
  for (int k = 0; k + 2 < order; ++k) {
    Complex acc = 0.0;
    for (int j = 0; j <= k; ++j) acc += rho.coeff(j) * c[k - j];
    c[k + 2] = -0.25 * acc / static_cast<double>((k + 2) * (k + 1));
  }
  return LaurentSeries(rho.base(), 0, std::move(c));
}

LaurentSeries gauss_from_solutions(const LaurentSeries& w1,
                                   const LaurentSeries& w2) {
  LaurentSeries wr = w1 * derivative(w2) - w2 * derivative(w1);
  double dev = 0.0;
  for (int idx = std::min(wr.valuation(), 1); idx <= wr.top_index(); ++idx)
    if (idx != 0) dev = std::max(dev, std::abs(wr.coeff(idx)));
  Complex w0 = wr.coeff(0);
  if (std::abs(w0) < 1e-10 * wr.scale() || dev > 1e-8 * std::abs(w0))
    throw NumericError("Hill solutions are not independent (Wronskian check)");
  if (w2.declared_zero() || w2.valuation() != 0)
    throw NumericError("denominator solution vanishes at the base point");
  return w1 / w2;
}

Approximant approximate(const LaurentSeries& g_adapted, int n, int order) {
  if (n < 3) throw NumericError("approximant degree must be at least 3");
  LaurentSeries dg = derivative(g_adapted);
  if (dg.declared_zero() || dg.valuation() != 0)
    throw NumericError("approximation requires G' nonzero at the base");

  LaurentSeries w2 = reciprocal(sqrt_series(dg));
  LaurentSeries w1 = g_adapted * w2;
  LaurentSeries rho = Complex(2.0) * schwarzian(g_adapted);

  // Keep the Taylor polynomial of rho through degree n - 3.
  std::vector<Complex> rc(order, Complex(0.0));
  if (!rho.declared_zero() && rho.valuation() < 0)
    throw NumericError("Hill potential must be holomorphic at the base");
  for (int idx = 0; idx <= n - 3 && idx <= rho.top_index(); ++idx)
    rc[idx] = rho.coeff(idx);
  LaurentSeries rho_n(g_adapted.base(), 0, std::move(rc), rho.scale());

  LaurentSeries w1n = hill_solve(rho_n, w1.coeff(0), w1.coeff(1), order);
  LaurentSeries w2n = hill_solve(rho_n, w2.coeff(0), w2.coeff(1), order);
  return Approximant{n, gauss_from_solutions(w1n, w2n), rho_n};
}

ConvergenceReport convergence_report(const WeierstrassData& w, Complex p,
                                     const std::vector<int>& degrees,
                                     const std::vector<Complex>& grid,
                                     int order) {
  LaurentSeries g = expand(w.gauss, p, order + 8);
  LaurentSeries h = expand(w.eta, p, order + 8);
  if (g.declared_zero()) throw NumericError("Gauss map vanishes identically");
  LaurentSeries q = -(log_derivative(g) * h);
  AdaptedCoordinate ad = adapt_coordinate(q);

  LaurentSeries ghat = compose(g, ad.inverse);
  LaurentSeries hhat = -(ghat / derivative(ghat));
  std::array<LaurentSeries, 3> target = immersion_series(ghat, hhat);

  double trust =
      0.5 * std::min({radius_estimate(ghat), radius_estimate(hhat),
                      radius_estimate(ad.inverse)});
  for (Complex dw : grid)
    if (std::abs(dw) > trust)
      throw NumericError("sample grid leaves the trust radius of the expansion");

  ConvergenceReport report;
  report.base = p;
  report.trust_radius = trust;
  for (int n : degrees) {
    Approximant ap = approximate(ghat, n, order);
    LaurentSeries hn = -(ap.gauss / derivative(ap.gauss));
    std::array<LaurentSeries, 3> xn = immersion_series(ap.gauss, hn);

    double sup = 0.0;
    for (Complex dw : grid) {
      double d2 = 0.0;
      for (int j = 0; j < 3; ++j) {
        double diff = (xn[j].eval(dw) - target[j].eval(dw)).real();
        d2 += diff * diff;
      }
      sup = std::max(sup, std::sqrt(d2));
    }

    // Certificate that P_n of the approximant vanishes: compare the two
    // halves of the recurrence step P_n = P_{n-1}' - (n-1) gamma P_{n-1}
    // without letting the subtraction be trimmed away.
    LaurentSeries qn = -(log_derivative(ap.gauss) * hn);
    auto seq = entropy_sequence_series(ap.gauss, qn, n - 1);
    ConnectionChart chart = connection(qn);
    const LaurentSeries& prev = seq.back().s;
    double pn_norm =
        prev.declared_zero()
            ? 0.0
            : rel_deviation(derivative(prev),
                            Complex(static_cast<double>(n - 1)) *
                                (chart.gamma * prev));
    report.entries.push_back(ApproximantReport{n, sup, pn_norm});
  }
  return report;
}

}  // namespace minsurf
