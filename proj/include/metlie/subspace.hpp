#pragma once

#include "metlie/matrix.hpp"

namespace metlie {

/// Linear subspace of Q^n, canonicalized by the rref of its spanning set so
/// that two subspaces are equal iff their basis matrices are equal.
class Subspace {
 public:
  Subspace() : ambient_(0) {}
  explicit Subspace(int ambient) : ambient_(ambient), basis_(0, ambient) {}

  static Subspace span(int ambient, const std::vector<Vec>& vectors);
  static Subspace span_rows(const Mat& rows);
  static Subspace full(int ambient);

  int ambient() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  /// Canonical basis, one vector per row.
  const Mat& basis() const { return basis_; }
  Vec basis_vector(int i) const { return basis_.row(i); }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& o) const = default;

  Subspace sum(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  /// Complement w.r.t. the standard dot product (used as a generic
  /// complement constructor, not tied to any algebra metric).
  Subspace perp_standard() const;
  /// Coordinates of v in this basis; nullopt when v is outside.
  std::optional<Vec> coordinates(const Vec& v) const;

 private:
  int ambient_;
  Mat basis_;  // rref, zero rows dropped
};

/// {x : <s, x>_G = 0 for all s in S}.
Subspace orthogonal_complement(const Subspace& s, const Mat& g);

}  // namespace metlie
