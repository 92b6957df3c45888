#include "minsurf/differentials.hpp"

#include <cmath>

#include "minsurf/errors.hpp"

namespace minsurf {

LaurentSeries hopf(const WeierstrassData& w, Complex p, int order) {
  LaurentSeries g = expand(w.gauss, p, order + 2);
  LaurentSeries h = expand(w.eta, p, order + 2);
  if (g.declared_zero())
    throw NumericError("Gauss map vanishes identically");
  return (-(log_derivative(g) * h)).truncated(order);
}

ConnectionChart connection(const LaurentSeries& q) {
  if (q.declared_zero())
    throw NumericError("Hopf differential vanishes identically (planar data)");
  return ConnectionChart{log_derivative(q) / Complex(2.0)};
}

LaurentSeries schwarzian(const LaurentSeries& f) {
  LaurentSeries d1 = derivative(f);
  if (d1.declared_zero())
    throw NumericError("Schwarzian of a locally constant function");
  LaurentSeries d2 = derivative(d1);
  LaurentSeries d3 = derivative(d2);
  LaurentSeries u = d2 / d1;
  return d3 / d1 - Complex(1.5) * (u * u);
}

Differential entropy_p2(const LaurentSeries& g, const LaurentSeries& q) {
  if (q.declared_zero())
    throw NumericError("Hopf differential vanishes identically (planar data)");
  LaurentSeries lq = log_derivative(q);
  LaurentSeries qpp_over_q = derivative(derivative(q)) / q;
  LaurentSeries p2 = schwarzian(g) + Complex(5.0 / 8.0) * (lq * lq) -
                     Complex(0.5) * qpp_over_q;
  return Differential{2, p2};
}

Differential entropy_next(const Differential& p, const ConnectionChart& chart) {
  LaurentSeries next =
      derivative(p.s) - Complex(static_cast<double>(p.ell)) * (chart.gamma * p.s);
  return Differential{p.ell + 1, next};
}

std::vector<Differential> entropy_sequence_series(const LaurentSeries& g,
                                                  const LaurentSeries& q,
                                                  int ell_max) {
  if (ell_max < 2) throw NumericError("entropy sequence starts at degree 2");
  ConnectionChart chart = connection(q);
  std::vector<Differential> out;
  out.push_back(entropy_p2(g, q));
  while (out.back().ell < ell_max) out.push_back(entropy_next(out.back(), chart));
  return out;
}

std::vector<Differential> entropy_sequence(const WeierstrassData& w, Complex p,
                                           int ell_max, int order) {
  int pad = ell_max + 6;
  LaurentSeries g = expand(w.gauss, p, order + pad);
  LaurentSeries h = expand(w.eta, p, order + pad);
  if (g.declared_zero())
    throw NumericError("Gauss map vanishes identically");
  LaurentSeries q = -(log_derivative(g) * h);
  std::vector<Differential> seq = entropy_sequence_series(g, q, ell_max);
  for (auto& d : seq) d.s = d.s.truncated(order);
  return seq;
}

Complex residue(const Differential& p) {
  if (!p.s.declared_zero() && p.s.valuation() < -p.ell)
    throw NumericError("pole order exceeds the differential degree");
  return p.s.coeff(-p.ell);
}

Complex residue_formula(int ell, int n) {
  if (ell < 2 || n < 1)
    throw NumericError("residue formula needs ell >= 2 and n >= 1");
  double v = std::pow(-0.5, ell + 1);
  for (int j = 1; j < ell; ++j) v *= j;  // (ell-1)!
  for (int j = 0; j < ell - 2; ++j) v *= n + 2;
  v *= 3.0 * n * n + 4.0 * n;
  return Complex(v);
}

int umbilic_order(const LaurentSeries& q) {
  if (q.declared_zero())
    throw NumericError("Hopf differential vanishes identically (planar data)");
  return q.valuation() > 0 ? q.valuation() : 0;
}

std::vector<LaurentSeries> moebius_schwarzian_seq(const LaurentSeries& f,
                                                  int ell_max) {
  if (ell_max < 2) throw NumericError("Schwarzian sequence starts at degree 2");
  LaurentSeries d1 = derivative(f);
  if (d1.declared_zero())
    throw NumericError("Schwarzian of a locally constant function");
  LaurentSeries lf = derivative(d1) / d1;
  std::vector<LaurentSeries> out;
  out.push_back(schwarzian(f));
  for (int ell = 2; ell < ell_max; ++ell)
    out.push_back(derivative(out.back()) -
                  Complex(static_cast<double>(ell)) * (out.back() * lf));
  return out;
}

}  // namespace minsurf
