#pragma once

// Shared deterministic generators for the test and acceptance suites.

#include <random>

#include "metlie/twofold.hpp"

namespace gen {

using namespace metlie;

inline Rat rat(std::mt19937_64& rng, int num_range = 3, int max_den = 3) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, max_den);
  return rat_of(num(rng), den(rng));
}

inline Vec vec(std::mt19937_64& rng, int n, int num_range = 3) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = rat(rng, num_range);
  return v;
}

inline Mat invertible(std::mt19937_64& rng, int n, int num_range = 2) {
  for (;;) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = rat(rng, num_range, 2);
    if (det(m) != 0) return m;
  }
}

/// Nondegenerate symmetric matrix with the given number of minus signs,
/// produced as a congruence S^T D S of a sign diagonal.
inline Mat gram(std::mt19937_64& rng, int n, int negatives) {
  Vec d(n, Rat(1));
  for (int i = 0; i < negatives; ++i) d[i] = -1;
  Mat s = invertible(rng, n, 1);
  return s.transpose() * Mat::diag(d) * s;
}

/// Commuting family of gramA-antisymmetric matrices: odd polynomials of a
/// single antisymmetric seed (G^-1 K with K plainly antisymmetric).
inline std::vector<Mat> commuting_rho(std::mt19937_64& rng, int l, int a, const Mat& g) {
  Mat k(a, a);
  for (int i = 0; i < a; ++i)
    for (int j = i + 1; j < a; ++j) {
      Rat v = rat(rng, 2, 2);
      k.at(i, j) = v;
      k.at(j, i) = -v;
    }
  Mat n = *inverse(g) * k;
  Mat n3 = n * n * n;
  std::vector<Mat> rho;
  for (int j = 0; j < l; ++j) {
    Mat r = n.scaled(rat(rng, 2, 2)) + n3.scaled(rat(rng, 1, 2));
    rho.push_back(r);
  }
  return rho;
}

inline Rep rep(std::mt19937_64& rng, int l, int a, int negatives) {
  Rep r;
  r.l = l;
  r.a = a;
  r.gramA = gram(rng, a, negatives);
  r.rho = commuting_rho(rng, l, a, r.gramA);
  r.validate();
  return r;
}

inline Cochain cochain(std::mt19937_64& rng, const Rep& r, int deg, int num_range = 2) {
  Cochain c = Cochain::zero(deg, r.l, r.a);
  for (const auto& t : increasing_tuples(r.l, deg)) c.set(t, vec(rng, r.a, num_range));
  return c;
}

inline ScalarForm form(std::mt19937_64& rng, int l, int deg, int num_range = 2) {
  ScalarForm f = ScalarForm::zero(deg, l);
  for (const auto& t : increasing_tuples(l, deg)) f.set(t, rat(rng, num_range));
  return f;
}

/// Joint kernel of the representation (any signature).
inline Subspace joint_kernel(const Rep& r) {
  if (r.l == 0) return Subspace::full(r.a);
  Mat stacked(0, r.a);
  for (const Mat& m : r.rho) stacked = stacked.vstack(m);
  return Subspace::span(r.a, nullspace(stacked));
}

/// Random element of Z^2 with vanishing cup square, built as a coboundary
/// plus a kernel-valued part. For l <= 3 the four-index identity is vacuous,
/// so this samples the whole space of admissible alphas.
inline Cochain cocycle_ek(std::mt19937_64& rng, const Rep& r) {
  Cochain tau = cochain(rng, r, 1);
  Cochain alpha = differential_or_zero(r, tau);
  Subspace ker = joint_kernel(r);
  for (const auto& t : increasing_tuples(r.l, 2)) {
    Vec v(r.a, Rat(0));
    for (int i = 0; i < ker.dim(); ++i)
      v = vec_add(v, vec_scaled(ker.basis_vector(i), rat(rng, 2, 2)));
    alpha.set(t, vec_add(alpha.value(t), v));
  }
  return alpha;
}

inline TwofoldData data(std::mt19937_64& rng, int l, int a, int negatives) {
  Rep r = rep(rng, l, a, negatives);
  TwofoldData d{r, cocycle_ek(rng, r), form(rng, l, 3)};
  d.validate();
  return d;
}

}  // namespace gen
