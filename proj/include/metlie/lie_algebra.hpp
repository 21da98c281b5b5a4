#pragma once

#include <array>
#include <optional>

#include "metlie/subspace.hpp"

namespace metlie {

/// Metric Lie algebra given by structure constants on a fixed basis and a
/// symmetric Gram matrix. Brackets are stored for i < j only; the other
/// order is produced by antisymmetry.
class MetricLieAlgebra {
 public:
  MetricLieAlgebra() : n_(0) {}
  MetricLieAlgebra(int n, Mat gram);

  int dim() const { return n_; }
  const Mat& gram() const { return gram_; }

  void set_bracket(int i, int j, const Vec& v);
  /// [e_i, e_j], extended antisymmetrically; zero for i == j.
  Vec bracket(int i, int j) const;
  Vec bracket(const Vec& x, const Vec& y) const;
  Rat inner(const Vec& x, const Vec& y) const { return dot_g(x, gram_, y); }

  /// Raw entries a JSON file listed with i > j; retained so verify can check
  /// redundant listings against the canonical ones.
  struct RawEntry {
    int i, j;
    Vec v;
  };
  std::vector<RawEntry>& redundant_entries() { return redundant_; }
  const std::vector<RawEntry>& redundant_entries() const { return redundant_; }

 private:
  int n_;
  Mat gram_;
  std::vector<Vec> c_;  // indexed by pair_index(i,j), i < j
  std::vector<RawEntry> redundant_;

  int pair_index(int i, int j) const { return i * n_ - i * (i + 1) / 2 + (j - i - 1); }
};

struct AxiomCheck {
  bool pass = true;
  std::array<int, 3> witness{-1, -1, -1};  // first failing triple, if any
};

struct VerifyReport {
  AxiomCheck antisymmetry, jacobi, invariance, nondegeneracy;
  bool ok() const {
    return antisymmetry.pass && jacobi.pass && invariance.pass && nondegeneracy.pass;
  }
};

/// Checks the four metric Lie algebra axioms exactly, reporting the first
/// failing basis triple per axiom.
VerifyReport verify(const MetricLieAlgebra& g);

/// {x : [x,y] = 0 for all y}. Asserts the metric identity
/// centre = derived^perp; throws logic_error if it fails (unverified input).
Subspace centre(const MetricLieAlgebra& g);

/// Span of all basis brackets.
Subspace derived(const MetricLieAlgebra& g);

/// g^(0) = g, g^(k+1) = [g^(k), g^(k)], until stabilization.
std::vector<Subspace> derived_series(const MetricLieAlgebra& g);
/// g_0 = g, g_{k+1} = [g, g_k], until stabilization.
std::vector<Subspace> lower_central_series(const MetricLieAlgebra& g);

bool is_solvable(const MetricLieAlgebra& g);
bool is_nilpotent(const MetricLieAlgebra& g);
bool is_abelian(const MetricLieAlgebra& g);

/// Span of [x, s] over x in g, s in S.
Subspace bracket_space(const MetricLieAlgebra& g, const Subspace& a, const Subspace& b);

Subspace orthogonal_complement(const MetricLieAlgebra& g, const Subspace& s);

struct IdealCheck {
  bool is_ideal = false;
  bool nondegenerate = false;
  bool ok() const { return is_ideal && nondegenerate; }
};

IdealCheck is_nondegenerate_ideal(const MetricLieAlgebra& g, const Subspace& s);

MetricLieAlgebra direct_sum(const MetricLieAlgebra& g1, const MetricLieAlgebra& g2);

}  // namespace metlie
