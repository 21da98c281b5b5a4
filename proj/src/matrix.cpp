#include "metlie/matrix.hpp"

#include <sstream>

namespace metlie {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, int cols) {
  Mat m(int(rows.size()), cols);
  for (int i = 0; i < int(rows.size()); ++i) {
    if (int(rows[i].size()) != cols) throw input_error("row length mismatch");
    m.set_row(i, rows[i]);
  }
  return m;
}

Mat Mat::col_vector(const Vec& v) {
  Mat m(int(v.size()), 1);
  for (int i = 0; i < int(v.size()); ++i) m.at(i, 0) = v[i];
  return m;
}

Mat Mat::diag(const Vec& d) {
  Mat m(int(d.size()), int(d.size()));
  for (int i = 0; i < int(d.size()); ++i) m.at(i, i) = d[i];
  return m;
}

Vec Mat::row(int i) const {
  Vec v(cols_);
  for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
  return v;
}

Vec Mat::col(int j) const {
  Vec v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

void Mat::set_row(int i, const Vec& v) {
  for (int j = 0; j < cols_; ++j) at(i, j) = v[j];
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_) throw input_error("matrix product dimension mismatch");
  Mat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rat& a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
    }
  return r;
}

Vec Mat::operator*(const Vec& v) const {
  if (int(v.size()) != cols_) throw input_error("matrix-vector dimension mismatch");
  Vec r(rows_, Rat(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != 0) r[i] += at(i, j) * v[j];
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw input_error("matrix sum dimension mismatch");
  Mat r(rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw input_error("matrix difference dimension mismatch");
  Mat r(rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
  return r;
}

Mat Mat::scaled(const Rat& c) const {
  Mat r(rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * c;
  return r;
}

bool Mat::is_zero() const {
  for (const Rat& x : e_)
    if (x != 0) return false;
  return true;
}

bool Mat::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

Mat Mat::vstack(const Mat& o) const {
  if (cols_ != o.cols_ && rows_ != 0 && o.rows_ != 0)
    throw input_error("vstack column mismatch");
  int c = rows_ == 0 ? o.cols_ : cols_;
  Mat r(rows_ + o.rows_, c);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
  for (int i = 0; i < o.rows_; ++i)
    for (int j = 0; j < o.cols_; ++j) r.at(rows_ + i, j) = o.at(i, j);
  return r;
}

Mat Mat::hstack(const Mat& o) const {
  if (rows_ != o.rows_) throw input_error("hstack row mismatch");
  Mat r(rows_, cols_ + o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
  }
  return r;
}

Mat Mat::submatrix(int r0, int c0, int nr, int nc) const {
  Mat r(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) r.at(i, j) = at(r0 + i, c0 + j);
  return r;
}

std::string Mat::str() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    os << (i == 0 ? "[" : " ");
    for (int j = 0; j < cols_; ++j) os << (j ? " " : "[") << rat_str(at(i, j));
    os << "]" << (i + 1 == rows_ ? "]" : "\n");
  }
  if (rows_ == 0) os << "[]";
  return os.str();
}

Vec vec_add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec vec_scaled(const Vec& a, const Rat& c) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

Rat dot(const Vec& a, const Vec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot_g(const Vec& a, const Mat& G, const Vec& b) {
  Rat s = 0;
  for (int i = 0; i < G.rows(); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < G.cols(); ++j)
      if (G.at(i, j) != 0) s += a[i] * G.at(i, j) * b[j];
  }
  return s;
}

bool vec_is_zero(const Vec& v) {
  for (const Rat& x : v)
    if (x != 0) return false;
  return true;
}

Mat rref(const Mat& m) {
  Mat a = m;
  int lead = 0;
  for (int r = 0; r < a.rows() && lead < a.cols(); ++r) {
    int piv = -1;
    while (lead < a.cols()) {
      for (int i = r; i < a.rows(); ++i)
        if (a.at(i, lead) != 0) { piv = i; break; }
      if (piv >= 0) break;
      ++lead;
    }
    if (piv < 0) break;
    if (piv != r)
      for (int j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(r, j));
    Rat inv = 1 / a.at(r, lead);
    for (int j = lead; j < a.cols(); ++j) a.at(r, j) *= inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == r || a.at(i, lead) == 0) continue;
      Rat f = a.at(i, lead);
      for (int j = lead; j < a.cols(); ++j) a.at(i, j) -= f * a.at(r, j);
    }
    ++lead;
  }
  return a;
}

int rank(const Mat& m) {
  Mat r = rref(m);
  int rk = 0;
  for (int i = 0; i < r.rows(); ++i)
    if (!vec_is_zero(r.row(i))) ++rk;
  return rk;
}

std::vector<Vec> nullspace(const Mat& m) {
  Mat r = rref(m);
  std::vector<int> pivot_col(r.rows(), -1);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j)
      if (r.at(i, j) != 0) {
        pivot_col[i] = j;
        is_pivot[j] = true;
        break;
      }
  std::vector<Vec> basis;
  for (int j = 0; j < m.cols(); ++j) {
    if (is_pivot[j]) continue;
    Vec v(m.cols(), Rat(0));
    v[j] = 1;
    for (int i = 0; i < r.rows(); ++i)
      if (pivot_col[i] >= 0) v[pivot_col[i]] = -r.at(i, j);
    basis.push_back(v);
  }
  return basis;
}

std::optional<SolveResult> solve(const Mat& m, const Vec& b) {
  if (int(b.size()) != m.rows()) throw input_error("solve: rhs dimension mismatch");
  Mat aug = m.hstack(Mat::col_vector(b));
  Mat r = rref(aug);
  // A pivot in the last column means b is outside the column span.
  for (int i = 0; i < r.rows(); ++i) {
    bool lhs_zero = true;
    for (int j = 0; j < m.cols(); ++j)
      if (r.at(i, j) != 0) { lhs_zero = false; break; }
    if (lhs_zero && r.at(i, m.cols()) != 0) return std::nullopt;
  }
  Vec x(m.cols(), Rat(0));
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (r.at(i, j) != 0) {
        x[j] = r.at(i, m.cols());
        break;
      }
  return SolveResult{x, nullspace(m)};
}

std::optional<Mat> solve_matrix(const Mat& m, const Mat& b) {
  if (b.rows() != m.rows()) throw input_error("solve_matrix: rhs dimension mismatch");
  Mat x(m.cols(), b.cols());
  for (int j = 0; j < b.cols(); ++j) {
    auto s = solve(m, b.col(j));
    if (!s) return std::nullopt;
    for (int i = 0; i < m.cols(); ++i) x.at(i, j) = s->particular[i];
  }
  return x;
}

Rat det(const Mat& m) {
  if (m.rows() != m.cols()) throw input_error("det of non-square matrix");
  Mat a = m;
  Rat d = 1;
  int n = a.rows();
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (a.at(i, k) != 0) { piv = i; break; }
    if (piv < 0) return 0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(k, j));
      d = -d;
    }
    d *= a.at(k, k);
    Rat inv = 1 / a.at(k, k);
    for (int i = k + 1; i < n; ++i) {
      if (a.at(i, k) == 0) continue;
      Rat f = a.at(i, k) * inv;
      for (int j = k; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
    }
  }
  return d;
}

std::optional<Mat> inverse(const Mat& m) {
  if (m.rows() != m.cols()) throw input_error("inverse of non-square matrix");
  Mat r = rref(m.hstack(Mat::identity(m.rows())));
  for (int i = 0; i < m.rows(); ++i)
    if (r.at(i, i) != 1) return std::nullopt;
  return r.submatrix(0, m.cols(), m.rows(), m.cols());
}

Signature signature(const Mat& g) {
  if (!g.is_symmetric()) throw input_error("signature requires a symmetric matrix");
  Mat a = g;
  int n = a.rows();
  Signature sig;

  // Symmetric row+column operation helpers keep a congruent to g throughout.
  auto add_multiple = [&](int dst, int src, const Rat& f) {
    for (int j = 0; j < n; ++j) a.at(dst, j) += f * a.at(src, j);
    for (int i = 0; i < n; ++i) a.at(i, dst) += f * a.at(i, src);
  };
  auto swap_basis = [&](int i, int j) {
    for (int c = 0; c < n; ++c) std::swap(a.at(i, c), a.at(j, c));
    for (int r = 0; r < n; ++r) std::swap(a.at(r, i), a.at(r, j));
  };

  for (int k = 0; k < n; ++k) {
    if (a.at(k, k) == 0) {
      int dpiv = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, i) != 0) { dpiv = i; break; }
      if (dpiv >= 0) {
        swap_basis(k, dpiv);
      } else {
        // All remaining diagonal entries vanish; a nonzero off-diagonal
        // pair spans a hyperbolic plane. e_k += e_j makes the diagonal 2*a_kj.
        int hi = -1, hj = -1;
        for (int i = k; i < n && hi < 0; ++i)
          for (int j = i + 1; j < n; ++j)
            if (a.at(i, j) != 0) { hi = i; hj = j; break; }
        if (hi < 0) {
          sig.null += n - k;
          return sig;
        }
        if (hi != k) swap_basis(k, hi);
        if (hj == k) hj = hi;
        add_multiple(k, hj, Rat(1));
      }
    }
    Rat p = a.at(k, k);
    if (p > 0) ++sig.pos; else ++sig.neg;
    for (int i = k + 1; i < n; ++i) {
      if (a.at(i, k) == 0) continue;
      Rat f = -a.at(i, k) / p;
      add_multiple(i, k, f);
    }
  }
  return sig;
}

}  // namespace metlie
