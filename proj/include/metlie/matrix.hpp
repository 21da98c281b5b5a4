#pragma once

#include <optional>
#include <string>
#include <vector>

#include "metlie/rational.hpp"

namespace metlie {

using Vec = std::vector<Rat>;

/// Dense matrix over the rationals, row-major.
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols, Rat(0)) {}

  static Mat identity(int n);
  static Mat from_rows(const std::vector<Vec>& rows, int cols);
  static Mat col_vector(const Vec& v);
  static Mat diag(const Vec& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& at(int i, int j) { return e_[size_t(i) * cols_ + j]; }
  const Rat& at(int i, int j) const { return e_[size_t(i) * cols_ + j]; }

  Vec row(int i) const;
  Vec col(int j) const;
  void set_row(int i, const Vec& v);

  Mat transpose() const;
  Mat operator*(const Mat& o) const;
  Vec operator*(const Vec& v) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(const Rat& c) const;
  bool operator==(const Mat& o) const = default;

  bool is_zero() const;
  bool is_symmetric() const;

  /// Stacks o below this matrix (column counts must agree).
  Mat vstack(const Mat& o) const;
  Mat hstack(const Mat& o) const;
  Mat submatrix(int r0, int c0, int nr, int nc) const;

  std::string str() const;

 private:
  int rows_, cols_;
  std::vector<Rat> e_;
};

// Plain vector helpers.
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scaled(const Vec& a, const Rat& c);
Rat dot(const Vec& a, const Vec& b);
/// Inner product a^T G b.
Rat dot_g(const Vec& a, const Mat& G, const Vec& b);
bool vec_is_zero(const Vec& v);

/// Reduced row echelon form. Canonical: equal row spaces give equal rref
/// after dropping zero rows.
Mat rref(const Mat& m);

/// Rank via row reduction.
int rank(const Mat& m);

/// Basis of {v : Mv = 0}; empty iff M is injective.
std::vector<Vec> nullspace(const Mat& m);

struct SolveResult {
  Vec particular;
  std::vector<Vec> kernel;
};

/// Exact solve Mx = b. Returns nullopt iff b is outside the column span.
std::optional<SolveResult> solve(const Mat& m, const Vec& b);

/// Solve MX = B for a matrix right-hand side; nullopt if any column fails.
std::optional<Mat> solve_matrix(const Mat& m, const Mat& b);

Rat det(const Mat& m);
std::optional<Mat> inverse(const Mat& m);

struct Signature {
  int neg = 0;   // dimension of a maximal negative definite subspace
  int pos = 0;
  int null = 0;
  bool operator==(const Signature&) const = default;
};

/// Signature of a symmetric matrix by exact symmetric congruence
/// diagonalization (hyperbolic handling for zero diagonals, no floating
/// point). Convention: (neg, pos, null) — the index is listed first.
Signature signature(const Mat& g);

}  // namespace metlie
