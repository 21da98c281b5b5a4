#include "metlie/subspace.hpp"

namespace metlie {

Subspace Subspace::span(int ambient, const std::vector<Vec>& vectors) {
  for (const Vec& v : vectors)
    if (int(v.size()) != ambient) throw input_error("subspace vector dimension mismatch");
  return span_rows(Mat::from_rows(vectors, ambient));
}

Subspace Subspace::span_rows(const Mat& rows) {
  Mat r = rref(rows);
  std::vector<Vec> keep;
  for (int i = 0; i < r.rows(); ++i)
    if (!vec_is_zero(r.row(i))) keep.push_back(r.row(i));
  Subspace s(rows.cols());
  s.basis_ = Mat::from_rows(keep, rows.cols());
  return s;
}

Subspace Subspace::full(int ambient) { return span_rows(Mat::identity(ambient)); }

bool Subspace::contains(const Vec& v) const {
  if (int(v.size()) != ambient_) throw input_error("subspace membership dimension mismatch");
  Vec w = v;
  for (int i = 0; i < basis_.rows(); ++i) {
    int lead = -1;
    for (int j = 0; j < ambient_; ++j)
      if (basis_.at(i, j) != 0) { lead = j; break; }
    if (lead < 0) continue;
    if (w[lead] != 0) {
      Rat f = w[lead];  // pivot entries are 1 in rref
      for (int j = 0; j < ambient_; ++j) w[j] -= f * basis_.at(i, j);
    }
  }
  return vec_is_zero(w);
}

bool Subspace::contains(const Subspace& other) const {
  for (int i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_vector(i))) return false;
  return true;
}

Subspace Subspace::sum(const Subspace& o) const {
  if (ambient_ != o.ambient_) throw input_error("subspace sum ambient mismatch");
  return span_rows(basis_.vstack(o.basis_));
}

Subspace Subspace::intersect(const Subspace& o) const {
  // (S1 cap S2) = (S1^perp + S2^perp)^perp for the standard dot product.
  return perp_standard().sum(o.perp_standard()).perp_standard();
}

Subspace Subspace::perp_standard() const {
  if (dim() == 0) return full(ambient_);
  return Subspace::span(ambient_, nullspace(basis_));
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  auto s = solve(basis_.transpose(), v);
  if (!s) return std::nullopt;
  return s->particular;
}

Subspace orthogonal_complement(const Subspace& s, const Mat& g) {
  if (s.ambient() != g.rows()) throw input_error("orthogonal complement: gram size mismatch");
  if (s.dim() == 0) return Subspace::full(s.ambient());
  return Subspace::span(s.ambient(), nullspace(s.basis() * g));
}

}  // namespace metlie
