#include "minsurf/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "minsurf/errors.hpp"

namespace minsurf {

namespace {

double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

void require_same_base(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.base() != b.base()) {
    std::ostringstream os;
    os << "base point mismatch: (" << a.base().real() << "," << a.base().imag()
       << ") vs (" << b.base().real() << "," << b.base().imag() << ")";
    throw NumericError(os.str());
  }
}

Complex pow_complex(Complex b, int e) {
  bool invert = e < 0;
  unsigned long n = invert ? -static_cast<long>(e) : e;
  Complex acc = 1.0;
  while (n) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  return invert ? 1.0 / acc : acc;
}

}  // namespace

Complex sqrt_anchor(Complex c) {
  if (c.imag() == 0.0) c = Complex(c.real(), +0.0);  // kill signed zero
  return std::sqrt(c);
}

LaurentSeries::LaurentSeries(Complex base, int valuation,
                             std::vector<Complex> coeffs, double carried_scale)
    : base_(base),
      valuation_(valuation),
      coeffs_(std::move(coeffs)),
      scale_(std::max(1.0, carried_scale)) {
  scale_ = std::max(scale_, max_abs(coeffs_));
  std::size_t lead = 0;
  while (lead < coeffs_.size() && std::abs(coeffs_[lead]) < kZeroRel * scale_)
    ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    valuation_ = 0;
  } else if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + lead);
    valuation_ += static_cast<int>(lead);
  }
}

LaurentSeries LaurentSeries::zero(Complex base, double carried_scale) {
  return LaurentSeries(base, 0, {}, carried_scale);
}

LaurentSeries LaurentSeries::constant(Complex base, Complex value, int size) {
  std::vector<Complex> c(std::max(size, 1), Complex(0.0));
  c[0] = value;
  return LaurentSeries(base, 0, std::move(c));
}

LaurentSeries LaurentSeries::displacement(Complex base, int size) {
  std::vector<Complex> c(std::max(size, 1), Complex(0.0));
  c[0] = 1.0;
  return LaurentSeries(base, 1, std::move(c));
}

Complex LaurentSeries::coeff(int index) const {
  int j = index - valuation_;
  if (j < 0 || j >= size()) return 0.0;
  return coeffs_[j];
}

Complex LaurentSeries::eval(Complex dz) const {
  if (coeffs_.empty()) return 0.0;
  if (valuation_ < 0 && dz == Complex(0.0))
    throw NumericError("pole at evaluation point");
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * dz + *it;
  return acc * pow_complex(dz, valuation_);
}

LaurentSeries LaurentSeries::truncated(int max_size) const {
  if (max_size >= size()) return *this;
  std::vector<Complex> c(coeffs_.begin(),
                         coeffs_.begin() + std::max(max_size, 0));
  return LaurentSeries(base_, valuation_, std::move(c), scale_);
}

std::string LaurentSeries::str() const {
  std::ostringstream os;
  if (declared_zero()) {
    os << "0";
    return os.str();
  }
  for (int j = 0; j < size(); ++j) {
    if (j) os << " + ";
    Complex c = coeffs_[j];
    os << "(" << c.real();
    if (c.imag() != 0.0) os << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
    os << ")";
    int idx = valuation_ + j;
    if (idx != 0) os << "*(z-p)^" << idx;
  }
  return os.str();
}

LaurentSeries operator-(const LaurentSeries& a) {
  std::vector<Complex> c(a.coeffs());
  for (auto& x : c) x = -x;
  return LaurentSeries(a.base(), a.valuation(), std::move(c), a.scale());
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  require_same_base(a, b);
  double s = std::max(a.scale(), b.scale());
  if (a.declared_zero() && b.declared_zero())
    return LaurentSeries::zero(a.base(), s);
  if (a.declared_zero())
    return LaurentSeries(b.base(), b.valuation(), b.coeffs(), s);
  if (b.declared_zero())
    return LaurentSeries(a.base(), a.valuation(), a.coeffs(), s);
  int lo = std::min(a.valuation(), b.valuation());
  int top = std::min(a.top_index(), b.top_index());
  std::vector<Complex> c(top - lo + 1);
  for (int idx = lo; idx <= top; ++idx) c[idx - lo] = a.coeff(idx) + b.coeff(idx);
  return LaurentSeries(a.base(), lo, std::move(c), s);
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
  return a + (-b);
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  require_same_base(a, b);
  double s = std::max(a.scale(), b.scale());
  if (a.declared_zero() || b.declared_zero())
    return LaurentSeries::zero(a.base(), s);
  int n = std::min(a.size(), b.size());
  std::vector<Complex> c(n, Complex(0.0));
  for (int i = 0; i < std::min(n, a.size()); ++i)
    for (int j = 0; j < std::min(n - i, b.size()); ++j)
      c[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return LaurentSeries(a.base(), a.valuation() + b.valuation(), std::move(c), s);
}

LaurentSeries reciprocal(const LaurentSeries& b) {
  if (b.declared_zero())
    throw NumericError("division by a declared-zero series");
  int n = b.size();
  Complex lead = b.coeffs()[0];
  std::vector<Complex> u(n);
  for (int j = 0; j < n; ++j) u[j] = b.coeffs()[j] / lead;
  std::vector<Complex> r(n, Complex(0.0));
  r[0] = 1.0;
  for (int k = 1; k < n; ++k) {
    Complex acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += u[j] * r[k - j];
    r[k] = -acc;
  }
  for (auto& x : r) x /= lead;
  return LaurentSeries(b.base(), -b.valuation(), std::move(r), b.scale());
}

LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) {
  require_same_base(a, b);
  if (b.declared_zero())
    throw NumericError("division by a declared-zero series");
  if (a.declared_zero())
    return LaurentSeries::zero(a.base(), std::max(a.scale(), b.scale()));
  return a * reciprocal(b);
}

LaurentSeries operator+(const LaurentSeries& a, Complex c) {
  if (c == Complex(0.0)) return a;
  if (a.declared_zero())
    return LaurentSeries(a.base(), 0, {c}, a.scale());
  int lo = std::min(a.valuation(), 0);
  int top = std::max(a.top_index(), 0);
  std::vector<Complex> v(top - lo + 1);
  for (int idx = lo; idx <= top; ++idx)
    v[idx - lo] = a.coeff(idx) + (idx == 0 ? c : Complex(0.0));
  return LaurentSeries(a.base(), lo, std::move(v), a.scale());
}

LaurentSeries operator+(Complex c, const LaurentSeries& a) { return a + c; }
LaurentSeries operator-(const LaurentSeries& a, Complex c) { return a + (-c); }
LaurentSeries operator-(Complex c, const LaurentSeries& a) { return (-a) + c; }

LaurentSeries operator*(const LaurentSeries& a, Complex c) {
  if (c == Complex(0.0)) return LaurentSeries::zero(a.base(), a.scale());
  std::vector<Complex> v(a.coeffs());
  for (auto& x : v) x *= c;
  return LaurentSeries(a.base(), a.valuation(), std::move(v), a.scale());
}

LaurentSeries operator*(Complex c, const LaurentSeries& a) { return a * c; }

LaurentSeries operator/(const LaurentSeries& a, Complex c) {
  if (c == Complex(0.0)) throw NumericError("division by zero constant");
  return a * (1.0 / c);
}

LaurentSeries pow_int(const LaurentSeries& a, int k) {
  if (k == 0) return LaurentSeries::constant(a.base(), 1.0, std::max(a.size(), 1));
  if (k < 0) return pow_int(reciprocal(a), -k);
  LaurentSeries acc = LaurentSeries::constant(a.base(), 1.0, a.size());
  LaurentSeries b = a;
  unsigned n = static_cast<unsigned>(k);
  while (n) {
    if (n & 1) acc = acc * b;
    if (n >>= 1) b = b * b;
  }
  return acc;
}

LaurentSeries derivative(const LaurentSeries& a) {
  if (a.declared_zero()) return a;
  int n = a.size();
  std::vector<Complex> c(n);
  for (int j = 0; j < n; ++j)
    c[j] = static_cast<double>(a.valuation() + j) * a.coeffs()[j];
  return LaurentSeries(a.base(), a.valuation() - 1, std::move(c), a.scale());
}

LaurentSeries antiderivative(const LaurentSeries& a) {
  if (a.declared_zero()) return a;
  int rj = -1 - a.valuation();
  if (rj >= 0 && rj < a.size() &&
      std::abs(a.coeffs()[rj]) >= 1e-12 * a.scale())
    throw NumericError("nonzero residue obstructs the antiderivative");
  int n = a.size();
  std::vector<Complex> c(n);
  for (int j = 0; j < n; ++j) {
    int idx = a.valuation() + j;
    c[j] = (idx == -1) ? Complex(0.0) : a.coeffs()[j] / static_cast<double>(idx + 1);
  }
  return LaurentSeries(a.base(), a.valuation() + 1, std::move(c), a.scale());
}

LaurentSeries sqrt_series(const LaurentSeries& a) {
  if (a.declared_zero()) return a;
  if (a.valuation() % 2 != 0)
    throw NumericError("square root of a series with odd valuation");
  int n = a.size();
  Complex lead = a.coeffs()[0];
  std::vector<Complex> u(n);
  for (int j = 0; j < n; ++j) u[j] = a.coeffs()[j] / lead;
  std::vector<Complex> s(n, Complex(0.0));
  s[0] = 1.0;
  for (int k = 1; k < n; ++k) {
    Complex acc = u[k];
    for (int j = 1; j < k; ++j) acc -= s[j] * s[k - j];
    s[k] = acc / 2.0;
  }
  Complex anchor = sqrt_anchor(lead);
  for (auto& x : s) x *= anchor;
  return LaurentSeries(a.base(), a.valuation() / 2, std::move(s), a.scale());
}

LaurentSeries exp_series(const LaurentSeries& a) {
  if (a.declared_zero())
    return LaurentSeries::constant(a.base(), 1.0, std::max(a.size(), 1));
  if (a.valuation() < 0)
    throw NumericError("exponential of a series with a pole");
  int w = a.valuation() + a.size();
  Complex c0 = a.coeff(0);
  std::vector<Complex> e(w, Complex(0.0));
  e[0] = 1.0;
  for (int k = 1; k < w; ++k) {
    Complex acc = 0.0;
    for (int j = 1; j <= k; ++j)
      acc += static_cast<double>(j) * a.coeff(j) * e[k - j];
    e[k] = acc / static_cast<double>(k);
  }
  Complex head = std::exp(c0);
  for (auto& x : e) x *= head;
  return LaurentSeries(a.base(), 0, std::move(e), a.scale());
}

LaurentSeries log_derivative(const LaurentSeries& a) {
  if (a.declared_zero())
    throw NumericError("logarithmic derivative of a declared-zero series");
  return derivative(a) / a;
}

LaurentSeries compose(const LaurentSeries& outer, const LaurentSeries& inner) {
  double s = std::max(outer.scale(), inner.scale());
  if (outer.valuation() < 0 && !outer.declared_zero())
    throw NumericError("composition requires outer valuation >= 0");
  if (inner.declared_zero()) {
    if (outer.declared_zero()) return LaurentSeries::zero(inner.base(), s);
    return LaurentSeries(inner.base(), 0, {outer.coeff(0)}, s);
  }
  if (inner.valuation() < 1)
    throw NumericError("composition requires the inner series to vanish at its base");
  if (outer.declared_zero()) return LaurentSeries::zero(inner.base(), s);

  int m = outer.top_index();
  int vg = inner.valuation();
  int ng = inner.size();
  int w = std::min((m + 1) * vg, vg + ng);
  std::vector<Complex> acc(w, Complex(0.0));
  acc[0] = outer.coeff(m);
  std::vector<Complex> tmp(w);
  for (int j = m - 1; j >= 0; --j) {
    std::fill(tmp.begin(), tmp.end(), Complex(0.0));
    for (int i = 0; i < w; ++i) {
      if (acc[i] == Complex(0.0)) continue;
      for (int t = 0; t < ng && i + vg + t < w; ++t)
        tmp[i + vg + t] += acc[i] * inner.coeffs()[t];
    }
    tmp[0] += outer.coeff(j);
    acc.swap(tmp);
  }
  return LaurentSeries(inner.base(), 0, std::move(acc), s);
}

double radius_estimate(const LaurentSeries& a) {
  constexpr double kCap = 1e6;
  if (a.declared_zero()) return kCap;
  std::vector<double> est;
  int lo = std::max(a.valuation() + a.size() / 2, 2);
  for (int idx = lo; idx <= a.top_index(); ++idx) {
    double m = std::abs(a.coeff(idx));
    if (m < LaurentSeries::kZeroRel * a.scale()) continue;
    est.push_back(std::pow(m, -1.0 / idx));
  }
  if (est.empty()) return kCap;
  std::sort(est.begin(), est.end());
  return std::min(kCap, est[est.size() / 2]);
}

LaurentSeries revert(const LaurentSeries& a) {
  if (a.declared_zero() || a.valuation() != 1)
    throw NumericError("series reversion requires valuation exactly 1");
  int n = a.size();
  LaurentSeries id = LaurentSeries::displacement(a.base(), n);
  LaurentSeries b = id / a.coeffs()[0];
  LaurentSeries da = derivative(a);
  int iters = 2;
  while ((1 << iters) < n + 2) ++iters;
  for (int it = 0; it <= iters; ++it) {
    LaurentSeries fb = compose(a, b);
    LaurentSeries dfb = compose(da, b);
    LaurentSeries delta = (fb - id) / dfb;
    if (delta.declared_zero()) break;
    b = b - delta;
  }
  return b;
}

}  // namespace minsurf
