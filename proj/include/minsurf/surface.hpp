#pragma once

#include <array>
#include <string>
#include <vector>

#include "minsurf/differentials.hpp"

namespace minsurf {

/// Rectangular parameter grid, sampled inclusively at nx * ny points.
struct GridSpec {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  int nx = 2, ny = 2;
};

/// Sampled immersion: row-major over the grid (rows run in y), with unit
/// normals taken from the Gauss map by inverse stereographic projection.
struct ImmersionSample {
  GridSpec grid;
  std::vector<Complex> params;
  std::vector<std::array<double, 3>> points;
  std::vector<std::array<double, 3>> normals;
};

/// Integrate X = Re of the Weierstrass integral
///   (1/2 (G^{-1} - G), i/2 (G^{-1} + G), 1) e^{i theta} eta
/// along straight segments from the base point to each grid point, with
/// X(base) = 0.  Adaptive Gauss-Legendre quadrature; poles of the integrand
/// on a segment abort with a diagnostic.
ImmersionSample integrate_immersion(const WeierstrassData& w, Complex base,
                                    const GridSpec& grid, double theta = 0.0);

struct MetricCurvature {
  double lambda = 0.0;  // conformal factor: ds = lambda |dz|
  double gauss = 0.0;   // Gauss curvature
};

/// lambda = (|G| + |G|^{-1}) |h| / 2 and
/// K = -(4 |G'| |G| / (|h| (1 + |G|^2)^2))^2, with simultaneous zeros of
/// h and G resolved by series limits.
MetricCurvature metric_and_curvature(const WeierstrassData& w, Complex z);

/// Unit normal from the Gauss map: (2 Re g, 2 Im g, |g|^2 - 1) / (|g|^2 + 1).
std::array<double, 3> stereographic_normal(Complex g);

/// Moebius transformation, normalized to determinant one.
struct MoebiusMap {
  Complex a, b, c, d;
  MoebiusMap(Complex a, Complex b, Complex c, Complex d);
  Complex apply(Complex w) const;
};

/// Goursat transform: G -> m(G), h -> h (aG + b)(cG + d) / G.  Leaves the
/// Hopf differential (and hence every entropy differential) unchanged.
WeierstrassData goursat_transform(const WeierstrassData& w, const MoebiusMap& m);

/// h -> c e^{i theta} h (homothety and associated family).  Requires c > 0.
WeierstrassData scale_and_bonnet(const WeierstrassData& w, double c,
                                 double theta);

/// Termwise antiderivatives of the three Weierstrass integrand components
/// for series data (G, h) in one chart, anchored to vanish at the base.
std::array<LaurentSeries, 3> immersion_series(const LaurentSeries& g,
                                              const LaurentSeries& h);

/// Write a Wavefront OBJ mesh: "v %.17g %.17g %.17g" vertices in grid order,
/// optional "vn" normals, and quad faces with 1-based indices.
void export_mesh(const ImmersionSample& s, const std::string& path,
                 bool with_normals = true);

}  // namespace minsurf
