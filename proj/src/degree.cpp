#include "minsurf/degree.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "minsurf/errors.hpp"

namespace minsurf {

namespace {

void gen_partitions(int remaining, int max_part,
                    std::vector<int>& acc,
                    std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(acc);
    return;
  }
  for (int p = std::min(max_part, remaining); p >= 2; --p) {
    if (remaining - p == 1) continue;  // a leftover of 1 can never be filled
    acc.push_back(p);
    gen_partitions(remaining - p, p, acc, out);
    acc.pop_back();
  }
}

LaurentSeries monomial_series(const std::vector<int>& parts,
                              const std::vector<Differential>& seq) {
  LaurentSeries prod = seq[parts[0] - 2].s;
  for (std::size_t i = 1; i < parts.size(); ++i)
    prod = prod * seq[parts[i] - 2].s;
  return prod;
}

struct Stacked {
  Eigen::MatrixXcd a;
  Eigen::VectorXcd rhs;
  double scale = 1.0;
};

// Rows are Laurent coefficients of P_n (rhs) and of the candidate monomials
// (columns), aligned by absolute index and stacked across base points.
Stacked stack_relation(const std::vector<std::vector<Differential>>& seqs,
                       int n, const std::vector<std::vector<int>>& monos) {
  std::vector<std::vector<Complex>> rows_a;
  std::vector<Complex> rows_b;
  double scale = 1.0;
  for (const auto& seq : seqs) {
    const LaurentSeries& pn = seq[n - 2].s;
    std::vector<LaurentSeries> prods;
    prods.reserve(monos.size());
    for (const auto& m : monos) prods.push_back(monomial_series(m, seq));
    int lo = pn.declared_zero() ? 0 : pn.valuation();
    int top = pn.declared_zero() ? -1 : pn.top_index();
    for (const auto& pr : prods) {
      if (pr.declared_zero()) continue;
      lo = std::min(lo, pr.valuation());
      top = std::min(top, pr.top_index());
    }
    for (int idx = lo; idx <= top; ++idx) {
      std::vector<Complex> row(monos.size());
      for (std::size_t j = 0; j < prods.size(); ++j) {
        row[j] = prods[j].coeff(idx);
        scale = std::max(scale, std::abs(row[j]));
      }
      rows_a.push_back(std::move(row));
      rows_b.push_back(pn.coeff(idx));
      scale = std::max(scale, std::abs(rows_b.back()));
    }
  }
  Stacked s;
  s.a.resize(rows_a.size(), monos.size());
  s.rhs.resize(rows_b.size());
  for (std::size_t r = 0; r < rows_a.size(); ++r) {
    for (std::size_t c = 0; c < monos.size(); ++c) s.a(r, c) = rows_a[r][c];
    s.rhs(r) = rows_b[r];
  }
  s.scale = scale;
  return s;
}

}  // namespace

std::vector<std::vector<int>> weighted_monomials(int n) {
  std::vector<std::vector<int>> out;
  if (n < 4) return out;
  std::vector<int> acc;
  gen_partitions(n, n - 2, acc, out);
  return out;
}

AlgebraicType detect_degree(const WeierstrassData& w,
                            const std::vector<Complex>& base_points, int n_max,
                            int order, double tol) {
  if (base_points.size() < 2)
    throw NumericError("degree detection needs at least two base points");
  if (n_max < 2) throw NumericError("degree bound must be at least 2");
  std::vector<std::vector<Differential>> seqs;
  seqs.reserve(base_points.size());
  for (Complex p : base_points)
    seqs.push_back(entropy_sequence(w, p, n_max, order));

  for (int n = 2; n <= n_max; ++n) {
    bool all_zero = true;
    for (const auto& seq : seqs)
      all_zero = all_zero && seq[n - 2].s.declared_zero();
    if (all_zero) return AlgebraicType{n, {}, 0.0, 1.0};

    auto monos = weighted_monomials(n);
    if (monos.empty()) continue;
    Stacked st = stack_relation(seqs, n, monos);
    if (st.a.rows() < static_cast<long>(monos.size())) continue;

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
        st.a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::VectorXcd c = svd.solve(-st.rhs);
    double resid = (st.a * c + st.rhs).cwiseAbs().maxCoeff() / st.scale;
    if (resid >= tol) continue;

    double smax = svd.singularValues()(0);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    double cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
    if (cond > 1e12) {
      std::ostringstream os;
      os << "relation at degree " << n
         << " is ill-conditioned (condition number " << cond << ")";
      throw NumericError(os.str());
    }
    AlgebraicType t;
    t.degree = n;
    t.residual = resid;
    t.condition = cond;
    for (std::size_t j = 0; j < monos.size(); ++j)
      t.terms.push_back(RelationTerm{monos[j], c(j)});
    return t;
  }
  throw NumericError("no weighted-homogeneous relation up to the degree bound");
}

double verify_relation(const AlgebraicType& t, const WeierstrassData& w,
                       const std::vector<Complex>& probes, int order) {
  double worst = 0.0;
  for (Complex p : probes) {
    auto seq = entropy_sequence(w, p, t.degree, order);
    LaurentSeries r = seq[t.degree - 2].s;
    double scale = 1.0;
    for (int idx = r.valuation(); idx <= r.top_index(); ++idx)
      scale = std::max(scale, std::abs(r.coeff(idx)));
    int lo = r.declared_zero() ? 0 : r.valuation();
    int top = r.declared_zero() ? 0 : r.top_index();
    for (const auto& term : t.terms) {
      LaurentSeries m = monomial_series(term.partition, seq);
      for (int idx = m.valuation(); idx <= m.top_index(); ++idx)
        scale = std::max(scale, std::abs(m.coeff(idx)));
      if (!m.declared_zero()) {
        lo = std::min(lo, m.valuation());
        top = std::min(top, m.top_index());
      }
      r = r + term.coefficient * m;
    }
    double dev = 0.0;
    for (int idx = lo; idx <= top; ++idx)
      dev = std::max(dev, std::abs(r.coeff(idx)));
    worst = std::max(worst, dev / scale);
  }
  return worst;
}

std::vector<Complex> select_base_points(const WeierstrassData& w,
                                        const std::array<double, 4>& rect,
                                        int count) {
  constexpr int kGrid = 5;
  struct Candidate {
    Complex p;
    double qmag;
    double radius;
  };
  std::vector<Candidate> cands;
  double qmax = 0.0;
  for (int r = 0; r < kGrid; ++r) {
    for (int c = 0; c < kGrid; ++c) {
      Complex p(rect[0] + (rect[2] - rect[0]) * c / (kGrid - 1),
                rect[1] + (rect[3] - rect[1]) * r / (kGrid - 1));
      try {
        LaurentSeries q = hopf(w, p, 16);
        if (q.declared_zero() || q.valuation() != 0) continue;  // umbilic or pole
        double qm = std::abs(q.coeff(0));
        qmax = std::max(qmax, qm);
        cands.push_back({p, qm, radius_estimate(q)});
      } catch (const NumericError&) {
        continue;  // pole of G, h or q: unusable grid point
      }
    }
  }
  std::vector<Candidate> usable;
  for (const auto& c : cands)
    if (c.qmag >= 1e-6 * qmax) usable.push_back(c);
  std::stable_sort(usable.begin(), usable.end(), [](const auto& a, const auto& b) {
    if (a.radius != b.radius) return a.radius > b.radius;
    return a.qmag > b.qmag;
  });
  double step = std::min(std::abs(rect[2] - rect[0]), std::abs(rect[3] - rect[1])) /
                (kGrid - 1);
  std::vector<Complex> picked;
  for (const auto& c : usable) {
    bool clear = true;
    for (Complex p : picked)
      if (std::abs(p - c.p) < 0.999 * step) clear = false;
    if (clear) picked.push_back(c.p);
    if (static_cast<int>(picked.size()) == count) break;
  }
  if (static_cast<int>(picked.size()) < count)
    throw NumericError("chart rectangle does not contain enough usable base points");
  return picked;
}

double umbilic_coefficient(int n, UmbilicFamily family) {
  if (n < 1) throw NumericError("umbilic order must be positive");
  double np2 = static_cast<double>(n + 2);
  if (family == UmbilicFamily::kDegreeFour)
    return 12.0 * np2 * np2 / (3.0 * n * n + 4.0 * n);
  return 24.0 * np2 * np2 / ((3.0 * n + 4.0) * n);
}

}  // namespace minsurf
