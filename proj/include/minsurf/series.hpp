#pragma once

#include <complex>
#include <string>
#include <vector>

namespace minsurf {

using Complex = std::complex<double>;

/// Truncated Laurent series about a base point.
///
/// Stored coefficients cover the index window [valuation, valuation + size).
/// Indices below the valuation are exact zeros; indices at or past the top of
/// the window are unknown (truncation).  Arithmetic propagates the window
/// honestly: results only claim the coefficients the operands support.
///
/// Every series carries the largest coefficient magnitude met while it was
/// computed, floored at 1.  A series is *declared zero* when all stored
/// coefficients fall below 1e-10 times that scale; leading coefficients under
/// the same threshold are trimmed so the valuation stays tight.
class LaurentSeries {
 public:
  static constexpr double kZeroRel = 1e-10;

  LaurentSeries() : base_(0.0), valuation_(0), scale_(1.0) {}
  LaurentSeries(Complex base, int valuation, std::vector<Complex> coeffs,
                double carried_scale = 0.0);

  static LaurentSeries zero(Complex base, double carried_scale = 0.0);
  static LaurentSeries constant(Complex base, Complex value, int size);
  /// The series of (z - base) itself, padded with known zeros up to `size`
  /// coefficients.
  static LaurentSeries displacement(Complex base, int size);

  Complex base() const { return base_; }
  int valuation() const { return valuation_; }
  int size() const { return static_cast<int>(coeffs_.size()); }
  /// Index of the last stored coefficient (valuation - 1 when empty).
  int top_index() const { return valuation_ + size() - 1; }
  double scale() const { return scale_; }
  bool declared_zero() const { return coeffs_.empty(); }

  /// Coefficient at an absolute index.  Exact zero below the valuation; also
  /// zero above the stored window, so callers who care about truncation
  /// should consult top_index().
  Complex coeff(int index) const;
  const std::vector<Complex>& coeffs() const { return coeffs_; }

  /// Value at z = base + dz.  Requires dz != 0 when negative powers are
  /// present.
  Complex eval(Complex dz) const;

  /// Keep at most `max_size` coefficients from the valuation up.
  LaurentSeries truncated(int max_size) const;

  std::string str() const;

 private:
  Complex base_;
  int valuation_;
  std::vector<Complex> coeffs_;
  double scale_;
};

/// Principal square root with the branch anchor convention: non-negative real
/// part, positive imaginary part on the negative real axis.
Complex sqrt_anchor(Complex c);

LaurentSeries operator-(const LaurentSeries& a);
LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b);

LaurentSeries operator+(const LaurentSeries& a, Complex c);
LaurentSeries operator+(Complex c, const LaurentSeries& a);
LaurentSeries operator-(const LaurentSeries& a, Complex c);
LaurentSeries operator-(Complex c, const LaurentSeries& a);
LaurentSeries operator*(const LaurentSeries& a, Complex c);
LaurentSeries operator*(Complex c, const LaurentSeries& a);
LaurentSeries operator/(const LaurentSeries& a, Complex c);

LaurentSeries reciprocal(const LaurentSeries& b);
LaurentSeries pow_int(const LaurentSeries& a, int k);

LaurentSeries derivative(const LaurentSeries& a);
/// Term-wise antiderivative with integration constant zero.  Requires the
/// coefficient at index -1 to vanish (below 1e-12 relative to the scale).
LaurentSeries antiderivative(const LaurentSeries& a);

/// Square root continuing the anchored branch of the leading coefficient.
/// Requires even valuation.
LaurentSeries sqrt_series(const LaurentSeries& a);
/// Exponential; requires valuation >= 0 (no essential singularity).
LaurentSeries exp_series(const LaurentSeries& a);
/// derivative(a) / a.
LaurentSeries log_derivative(const LaurentSeries& a);

/// Substitute `inner` (the displacement series of a coordinate change, so
/// valuation >= 1) into `outer` (valuation >= 0).  The result lives at
/// inner's base point.
LaurentSeries compose(const LaurentSeries& outer, const LaurentSeries& inner);
/// Compositional inverse of a series with valuation exactly 1.
LaurentSeries revert(const LaurentSeries& a);

/// Crude convergence-radius estimate from the decay of the stored tail
/// coefficients (median of |c_k|^{-1/k} over the upper half of the window).
/// Entire or polynomial tails report a large radius, capped at 1e6.
double radius_estimate(const LaurentSeries& a);

}  // namespace minsurf
