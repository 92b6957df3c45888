#include "minsurf/surface.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "minsurf/errors.hpp"

namespace minsurf {

namespace {

using Vec3c = std::array<Complex, 3>;

// 15-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr double kGlNode[8] = {
    0.0,
    0.2011940939974345223,
    0.3941513470775633699,
    0.5709721726085388475,
    0.7244177313601700474,
    0.8482065834104272162,
    0.9372733924007059043,
    0.9879925180204854284,
};
constexpr double kGlWeight[8] = {
    0.2025782419255612729,
    0.1984314853271115765,
    0.1861610000155622110,
    0.1662692058169939336,
    0.1395706779261543144,
    0.1071592204671719351,
    0.0703660474881081247,
    0.0307532419961172684,
};

using Integrand = std::function<Vec3c(Complex)>;

Vec3c gl15(const Integrand& f, Complex a, Complex b) {
  Complex mid = 0.5 * (a + b), half = 0.5 * (b - a);
  Vec3c acc = f(mid);
  for (auto& x : acc) x *= kGlWeight[0];
  for (int i = 1; i < 8; ++i) {
    Vec3c lo = f(mid - half * kGlNode[i]);
    Vec3c hi = f(mid + half * kGlNode[i]);
    for (int j = 0; j < 3; ++j) acc[j] += kGlWeight[i] * (lo[j] + hi[j]);
  }
  for (auto& x : acc) x *= half;
  return acc;
}

Vec3c integrate_adaptive(const Integrand& f, Complex a, Complex b,
                         const Vec3c& whole, int depth) {
  Complex mid = 0.5 * (a + b);
  Vec3c left = gl15(f, a, mid);
  Vec3c right = gl15(f, mid, b);
  Vec3c sum;
  double diff = 0.0, mag = 1.0;
  for (int j = 0; j < 3; ++j) {
    sum[j] = left[j] + right[j];
    diff = std::max(diff, std::abs(whole[j] - sum[j]));
    mag = std::max(mag, std::abs(sum[j]));
  }
  if (diff <= 1e-10 * mag) return sum;
  if (depth > 40)
    throw NumericError("quadrature did not converge (singular integrand?)");
  left = integrate_adaptive(f, a, mid, left, depth + 1);
  right = integrate_adaptive(f, mid, b, right, depth + 1);
  for (int j = 0; j < 3; ++j) sum[j] = left[j] + right[j];
  return sum;
}

Vec3c integrate_segment(const Integrand& f, Complex a, Complex b) {
  if (a == b) return {Complex(0.0), Complex(0.0), Complex(0.0)};
  return integrate_adaptive(f, a, b, gl15(f, a, b), 0);
}

}  // namespace

std::array<double, 3> stereographic_normal(Complex g) {
  double n2 = std::norm(g);
  double den = n2 + 1.0;
  return {2.0 * g.real() / den, 2.0 * g.imag() / den, (n2 - 1.0) / den};
}

ImmersionSample integrate_immersion(const WeierstrassData& w, Complex base,
                                    const GridSpec& grid, double theta) {
  if (grid.nx < 2 || grid.ny < 2)
    throw NumericError("mesh grid needs at least 2 samples per direction");
  Complex phase = std::polar(1.0, theta);
  Integrand f = [&](Complex z) -> Vec3c {
    Complex gv = eval(w.gauss, z);
    if (gv == Complex(0.0))
      throw NumericError("pole of the integrand on an integration segment");
    Complex hv = phase * eval(w.eta, z);
    Complex ginv = 1.0 / gv;
    return {0.5 * (ginv - gv) * hv, Complex(0.0, 0.5) * (ginv + gv) * hv, hv};
  };

  ImmersionSample out;
  out.grid = grid;
  out.params.reserve(static_cast<std::size_t>(grid.nx) * grid.ny);
  double dx = (grid.x1 - grid.x0) / (grid.nx - 1);
  double dy = (grid.y1 - grid.y0) / (grid.ny - 1);

  // One probe loop: the far corner reached directly and through an
  // intermediate leg must agree, otherwise the chart is not simply usable.
  {
    Complex corner(grid.x1, grid.y1);
    if (std::abs(corner - base) > 0.0) {
      Vec3c direct = integrate_segment(f, base, corner);
      Complex knee(corner.real(), base.imag());
      Vec3c legs = integrate_segment(f, base, knee);
      Vec3c leg2 = integrate_segment(f, knee, corner);
      double mag = 1.0, diff = 0.0;
      for (int j = 0; j < 3; ++j) {
        mag = std::max(mag, std::abs(direct[j]));
        diff = std::max(diff, std::abs(direct[j] - legs[j] - leg2[j]));
      }
      if (diff > 1e-8 * mag)
        throw NumericError("path independence probe failed on the grid");
    }
  }

  for (int r = 0; r < grid.ny; ++r) {
    for (int c = 0; c < grid.nx; ++c) {
      Complex z(grid.x0 + dx * c, grid.y0 + dy * r);
      out.params.push_back(z);
      Vec3c xt = integrate_segment(f, base, z);
      out.points.push_back({xt[0].real(), xt[1].real(), xt[2].real()});
      out.normals.push_back(stereographic_normal(eval(w.gauss, z)));
    }
  }
  return out;
}

MetricCurvature metric_and_curvature(const WeierstrassData& w, Complex z) {
  LaurentSeries g = expand(w.gauss, z, 8);
  LaurentSeries h = expand(w.eta, z, 8);
  if (g.declared_zero()) throw NumericError("Gauss map vanishes identically");
  if (h.declared_zero()) throw NumericError("height differential vanishes identically");
  if (g.valuation() < 0)
    throw NumericError("Gauss map pole at the metric point; use another chart point");
  LaurentSeries gh = g * h;
  LaurentSeries h_over_g = h / g;
  if (h_over_g.valuation() < 0 || gh.valuation() < 0)
    throw NumericError("metric is singular at the point (incompatible data)");
  double lambda = 0.5 * (std::abs(gh.coeff(0)) + std::abs(h_over_g.coeff(0)));

  LaurentSeries ratio = (derivative(g) * g) / h;
  if (ratio.valuation() < 0)
    throw NumericError("curvature is unbounded at the point (incompatible data)");
  double g0 = std::abs(g.coeff(0));
  double t = 4.0 * std::abs(ratio.coeff(0)) / ((1.0 + g0 * g0) * (1.0 + g0 * g0));
  return MetricCurvature{lambda, -t * t};
}

MoebiusMap::MoebiusMap(Complex a_, Complex b_, Complex c_, Complex d_)
    : a(a_), b(b_), c(c_), d(d_) {
  Complex det = a * d - b * c;
  double mag = std::abs(a) * std::abs(d) + std::abs(b) * std::abs(c);
  if (std::abs(det) <= 1e-14 * std::max(mag, 1.0))
    throw NumericError("degenerate Moebius map");
  Complex s = sqrt_anchor(det);
  a /= s;
  b /= s;
  c /= s;
  d /= s;
}

Complex MoebiusMap::apply(Complex w) const { return (a * w + b) / (c * w + d); }

WeierstrassData goursat_transform(const WeierstrassData& w, const MoebiusMap& m) {
  Expr num = Expr::add(Expr::mul(Expr::constant(m.a), w.gauss),
                       Expr::constant(m.b));
  Expr den = Expr::add(Expr::mul(Expr::constant(m.c), w.gauss),
                       Expr::constant(m.d));
  Expr gnew = Expr::div(num, den);
  if (gnew.kind() == ExprKind::kConstant)
    throw NumericError("transformed Gauss map is constant");
  Expr hnew = Expr::mul(w.eta, Expr::div(Expr::mul(num, den), w.gauss));
  std::string label = w.label.empty() ? "goursat" : w.label + "/goursat";
  return WeierstrassData{gnew, hnew, label};
}

WeierstrassData scale_and_bonnet(const WeierstrassData& w, double c,
                                 double theta) {
  if (!(c > 0.0)) throw NumericError("scale factor must be positive");
  Complex factor = std::polar(c, theta);
  Expr hnew = Expr::mul(Expr::constant(factor), w.eta);
  std::string label = w.label;
  if (theta != 0.0) label += "/bonnet";
  if (c != 1.0) label += "/scaled";
  return WeierstrassData{w.gauss, hnew, label};
}

std::array<LaurentSeries, 3> immersion_series(const LaurentSeries& g,
                                              const LaurentSeries& h) {
  LaurentSeries over = h / g;
  LaurentSeries times = g * h;
  LaurentSeries phi1 = Complex(0.5) * (over - times);
  LaurentSeries phi2 = Complex(0.0, 0.5) * (over + times);
  return {antiderivative(phi1), antiderivative(phi2), antiderivative(h)};
}

void export_mesh(const ImmersionSample& s, const std::string& path,
                 bool with_normals) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw NumericError("cannot open mesh output file: " + path);
  for (const auto& p : s.points)
    std::fprintf(f, "v %.17g %.17g %.17g\n", p[0], p[1], p[2]);
  if (with_normals)
    for (const auto& n : s.normals)
      std::fprintf(f, "vn %.17g %.17g %.17g\n", n[0], n[1], n[2]);
  int nx = s.grid.nx;
  for (int r = 0; r + 1 < s.grid.ny; ++r) {
    for (int c = 0; c + 1 < nx; ++c) {
      int a = r * nx + c + 1;
      std::fprintf(f, "f %d %d %d %d\n", a, a + 1, a + nx + 1, a + nx);
    }
  }
  if (std::fclose(f) != 0)
    throw NumericError("failed to write mesh output file: " + path);
}

}  // namespace minsurf
