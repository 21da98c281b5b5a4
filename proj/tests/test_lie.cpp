#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"
#include "metlie/classify.hpp"
#include "metlie/lie_algebra.hpp"

using namespace metlie;

namespace {

MetricLieAlgebra abelian(int n) { return MetricLieAlgebra(n, Mat::identity(n)); }

Vec e(int n, int i) {
  Vec v(n, Rat(0));
  v[i] = 1;
  return v;
}

MetricLieAlgebra osc_algebra(const std::vector<long>& weights) {
  Mat lambda(int(weights.size()), 1);
  for (size_t i = 0; i < weights.size(); ++i) lambda.at(int(i), 0) = Rat(weights[i]);
  return build(build_family(make_family_spec(FamilyRow::OscL1, WeightMatrix::from(lambda))));
}

// Independent brute-force axiom checks, separate from verify().
bool brute_jacobi(const MetricLieAlgebra& g) {
  int n = g.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Vec s = g.bracket(g.bracket(e(n, i), e(n, j)), e(n, k));
        s = vec_add(s, g.bracket(g.bracket(e(n, j), e(n, k)), e(n, i)));
        s = vec_add(s, g.bracket(g.bracket(e(n, k), e(n, i)), e(n, j)));
        if (!vec_is_zero(s)) return false;
      }
  return true;
}

bool brute_invariance(const MetricLieAlgebra& g) {
  int n = g.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (g.inner(g.bracket(e(n, i), e(n, j)), e(n, k)) +
                g.inner(e(n, j), g.bracket(e(n, i), e(n, k))) !=
            0)
          return false;
  return true;
}

}  // namespace

TEST_CASE("verify: abelian plane passes") {
  VerifyReport r = verify(abelian(2));
  CHECK(r.ok());
}

TEST_CASE("verify: sl2-like constants with a definite form fail invariance") {
  // [e1,e2] = e3, [e3,e1] = 2 e1, [e3,e2] = -2 e2; with the identity form,
  // <[e3,e1],e1> + <e1,[e3,e1]> = 4 by hand.
  MetricLieAlgebra g(3, Mat::identity(3));
  g.set_bracket(0, 1, e(3, 2));
  g.set_bracket(2, 0, vec_scaled(e(3, 0), Rat(2)));
  g.set_bracket(2, 1, vec_scaled(e(3, 1), Rat(-2)));
  VerifyReport r = verify(g);
  CHECK(r.jacobi.pass);
  CHECK_FALSE(r.invariance.pass);
}

TEST_CASE("verify: jacobi failure is caught with its triple") {
  MetricLieAlgebra g(3, Mat::identity(3));
  g.set_bracket(0, 1, e(3, 2));
  g.set_bracket(0, 2, e(3, 0));
  VerifyReport r = verify(g);
  CHECK_FALSE(r.jacobi.pass);
  CHECK(r.jacobi.witness == std::array<int, 3>{0, 1, 2});
}

TEST_CASE("verify: degenerate gram is reported") {
  MetricLieAlgebra g(2, Mat(2, 2));
  CHECK_FALSE(verify(g).nondegeneracy.pass);
}

TEST_CASE("verify: oscillator built from family data passes brute force") {
  MetricLieAlgebra g = osc_algebra({1});
  CHECK(verify(g).ok());
  CHECK(brute_jacobi(g));
  CHECK(brute_invariance(g));
}

TEST_CASE("centre: abelian is everything, oscillator centre is the extension line") {
  CHECK(centre(abelian(3)).dim() == 3);
  MetricLieAlgebra osc12 = osc_algebra({1, 2});
  CHECK(osc12.dim() == 6);
  CHECK(centre(osc12).dim() == 1);
}

TEST_CASE("centre equals the orthogonal complement of the derived algebra") {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 20; ++iter) {
    std::uniform_int_distribution<int> dl(0, 2), da(1, 4), dneg(0, 1);
    TwofoldData d = gen::data(rng, dl(rng), da(rng), dneg(rng));
    MetricLieAlgebra g = build(d);
    CHECK(centre(g) == orthogonal_complement(g, derived(g)));
  }
}

TEST_CASE("series and class predicates") {
  CHECK(is_abelian(abelian(3)));
  CHECK(is_nilpotent(abelian(3)));
  CHECK(derived(abelian(3)).dim() == 0);

  MetricLieAlgebra osc1 = osc_algebra({1});
  auto ds = derived_series(osc1);
  // g > g' > g'' > 0: solvable; the lower central series stabilizes at the
  // derived algebra, so the oscillator is not nilpotent.
  CHECK(is_solvable(osc1));
  CHECK_FALSE(is_nilpotent(osc1));
  CHECK(ds.back().dim() == 0);
  CHECK(lower_central_series(osc1).back().dim() == 3);
  CHECK_FALSE(is_abelian(osc1));
}

TEST_CASE("d-family member is solvable") {
  Mat lambda(1, 2);
  lambda.at(0, 0) = 1;
  lambda.at(0, 1) = 2;
  TwofoldData d = build_family(make_family_spec(FamilyRow::L2K1, WeightMatrix::from(lambda)));
  MetricLieAlgebra g = build(d);
  CHECK(verify(g).ok());
  CHECK(is_solvable(g));
}

TEST_CASE("complement of the oscillator centre is the derived algebra") {
  MetricLieAlgebra g = osc_algebra({1});
  CHECK(orthogonal_complement(g, centre(g)) == derived(g));
}

TEST_CASE("direct sums") {
  MetricLieAlgebra s = direct_sum(abelian(1), abelian(1));
  CHECK(s.dim() == 2);
  CHECK(is_abelian(s));
  CHECK(verify(s).ok());

  MetricLieAlgebra g = direct_sum(osc_algebra({1}), abelian(2));
  CHECK(verify(g).ok());
  Signature sg = signature(g.gram());
  Signature s1 = signature(osc_algebra({1}).gram());
  CHECK(sg.neg == s1.neg);
  CHECK(sg.pos == s1.pos + 2);
}

TEST_CASE("the oscillator centre is a degenerate ideal") {
  MetricLieAlgebra g = osc_algebra({1});
  Subspace z = centre(g);
  IdealCheck c = is_nondegenerate_ideal(g, z);
  CHECK(c.is_ideal);
  CHECK_FALSE(c.nondegenerate);
}

TEST_CASE("redundant bracket listings are cross-checked") {
  MetricLieAlgebra g(3, Mat::identity(3));
  g.set_bracket(0, 1, e(3, 2));
  g.redundant_entries().push_back({1, 0, e(3, 2)});  // wrong sign
  CHECK_FALSE(verify(g).antisymmetry.pass);
  g.redundant_entries().clear();
  g.redundant_entries().push_back({1, 0, vec_scaled(e(3, 2), Rat(-1))});
  CHECK(verify(g).antisymmetry.pass);
}
