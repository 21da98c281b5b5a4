#include "metlie/lie_algebra.hpp"

#include <stdexcept>

namespace metlie {

MetricLieAlgebra::MetricLieAlgebra(int n, Mat gram) : n_(n), gram_(std::move(gram)) {
  if (gram_.rows() != n || gram_.cols() != n) throw input_error("gram size mismatch");
  if (!gram_.is_symmetric()) throw input_error("gram matrix not symmetric");
  c_.assign(size_t(n) * (n - 1) / 2, Vec(n, Rat(0)));
}

void MetricLieAlgebra::set_bracket(int i, int j, const Vec& v) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_ || i == j) throw input_error("bad bracket indices");
  if (int(v.size()) != n_) throw input_error("bracket value dimension mismatch");
  if (i < j)
    c_[pair_index(i, j)] = v;
  else
    c_[pair_index(j, i)] = vec_scaled(v, Rat(-1));
}

Vec MetricLieAlgebra::bracket(int i, int j) const {
  if (i == j) return Vec(n_, Rat(0));
  if (i < j) return c_[pair_index(i, j)];
  return vec_scaled(c_[pair_index(j, i)], Rat(-1));
}

Vec MetricLieAlgebra::bracket(const Vec& x, const Vec& y) const {
  Vec r(n_, Rat(0));
  for (int i = 0; i < n_; ++i) {
    if (x[i] == 0 && y[i] == 0) continue;
    for (int j = i + 1; j < n_; ++j) {
      Rat coeff = x[i] * y[j] - x[j] * y[i];
      if (coeff == 0) continue;
      const Vec& c = c_[pair_index(i, j)];
      for (int k = 0; k < n_; ++k)
        if (c[k] != 0) r[k] += coeff * c[k];
    }
  }
  return r;
}

VerifyReport verify(const MetricLieAlgebra& g) {
  VerifyReport rep;
  int n = g.dim();

  for (const auto& e : g.redundant_entries()) {
    Vec expect = g.bracket(e.i, e.j);
    if (expect != e.v) {
      rep.antisymmetry.pass = false;
      rep.antisymmetry.witness = {e.i, e.j, -1};
      break;
    }
  }

  // [x, e_k] against precomputed basis brackets keeps the triple loops cheap.
  auto ad_basis = [&](const Vec& x, int k) {
    Vec r(n, Rat(0));
    for (int i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      Vec b = g.bracket(i, k);
      for (int t = 0; t < n; ++t)
        if (b[t] != 0) r[t] += x[i] * b[t];
    }
    return r;
  };

  for (int i = 0; i < n && rep.jacobi.pass; ++i)
    for (int j = i + 1; j < n && rep.jacobi.pass; ++j)
      for (int k = j + 1; k < n; ++k) {
        // [[i,j],k] + [[j,k],i] + [[k,i],j]
        Vec total = ad_basis(g.bracket(i, j), k);
        total = vec_add(total, ad_basis(g.bracket(j, k), i));
        total = vec_add(total, ad_basis(g.bracket(k, i), j));
        if (!vec_is_zero(total)) {
          rep.jacobi.pass = false;
          rep.jacobi.witness = {i, j, k};
          break;
        }
      }

  // w[i][j] = G [e_i, e_j]; the invariance identity becomes
  // w[i][j][k] + w[i][k][j] = 0.
  std::vector<std::vector<Vec>> w(n, std::vector<Vec>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w[i][j] = g.gram() * g.bracket(i, j);
  for (int i = 0; i < n && rep.invariance.pass; ++i)
    for (int j = 0; j < n && rep.invariance.pass; ++j)
      for (int k = 0; k < n; ++k)
        if (w[i][j][k] + w[i][k][j] != 0) {
          rep.invariance.pass = false;
          rep.invariance.witness = {i, j, k};
          break;
        }

  if (signature(g.gram()).null != 0) rep.nondegeneracy.pass = false;
  return rep;
}

Subspace derived(const MetricLieAlgebra& g) {
  std::vector<Vec> spans;
  for (int i = 0; i < g.dim(); ++i)
    for (int j = i + 1; j < g.dim(); ++j) spans.push_back(g.bracket(i, j));
  return Subspace::span(g.dim(), spans);
}

Subspace centre(const MetricLieAlgebra& g) {
  int n = g.dim();
  // Rows of the stacked system: for each j and output coordinate k,
  // sum_i x_i [e_i, e_j]_k = 0.
  Mat sys(0, n);
  for (int j = 0; j < n; ++j) {
    Mat bj(n, n);
    for (int i = 0; i < n; ++i) {
      Vec b = g.bracket(i, j);
      for (int k = 0; k < n; ++k) bj.at(k, i) = b[k];
    }
    sys = sys.vstack(bj);
  }
  Subspace z = Subspace::span(n, nullspace(sys));
  if (z != orthogonal_complement(g, derived(g)))
    throw std::logic_error("centre != derived^perp; input is not a metric Lie algebra");
  return z;
}

Subspace bracket_space(const MetricLieAlgebra& g, const Subspace& a, const Subspace& b) {
  std::vector<Vec> spans;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j)
      spans.push_back(g.bracket(a.basis_vector(i), b.basis_vector(j)));
  return Subspace::span(g.dim(), spans);
}

std::vector<Subspace> derived_series(const MetricLieAlgebra& g) {
  std::vector<Subspace> series{Subspace::full(g.dim())};
  for (;;) {
    Subspace next = bracket_space(g, series.back(), series.back());
    if (next == series.back()) break;
    series.push_back(next);
    if (next.dim() == 0) break;
  }
  return series;
}

std::vector<Subspace> lower_central_series(const MetricLieAlgebra& g) {
  std::vector<Subspace> series{Subspace::full(g.dim())};
  for (;;) {
    Subspace next = bracket_space(g, series.front(), series.back());
    if (next == series.back()) break;
    series.push_back(next);
    if (next.dim() == 0) break;
  }
  return series;
}

bool is_solvable(const MetricLieAlgebra& g) { return derived_series(g).back().dim() == 0; }
bool is_nilpotent(const MetricLieAlgebra& g) { return lower_central_series(g).back().dim() == 0; }
bool is_abelian(const MetricLieAlgebra& g) { return derived(g).dim() == 0; }

Subspace orthogonal_complement(const MetricLieAlgebra& g, const Subspace& s) {
  return orthogonal_complement(s, g.gram());
}

IdealCheck is_nondegenerate_ideal(const MetricLieAlgebra& g, const Subspace& s) {
  IdealCheck r;
  r.is_ideal = s.contains(bracket_space(g, Subspace::full(g.dim()), s));
  Mat restricted = s.basis() * g.gram() * s.basis().transpose();
  r.nondegenerate = signature(restricted).null == 0;
  return r;
}

MetricLieAlgebra direct_sum(const MetricLieAlgebra& g1, const MetricLieAlgebra& g2) {
  int n1 = g1.dim(), n2 = g2.dim();
  Mat gram(n1 + n2, n1 + n2);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j) gram.at(i, j) = g1.gram().at(i, j);
  for (int i = 0; i < n2; ++i)
    for (int j = 0; j < n2; ++j) gram.at(n1 + i, n1 + j) = g2.gram().at(i, j);
  MetricLieAlgebra g(n1 + n2, gram);
  for (int i = 0; i < n1; ++i)
    for (int j = i + 1; j < n1; ++j) {
      Vec v(n1 + n2, Rat(0));
      Vec b = g1.bracket(i, j);
      for (int k = 0; k < n1; ++k) v[k] = b[k];
      g.set_bracket(i, j, v);
    }
  for (int i = 0; i < n2; ++i)
    for (int j = i + 1; j < n2; ++j) {
      Vec v(n1 + n2, Rat(0));
      Vec b = g2.bracket(i, j);
      for (int k = 0; k < n2; ++k) v[n1 + k] = b[k];
      g.set_bracket(n1 + i, n1 + j, v);
    }
  return g;
}

}  // namespace metlie
