#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "gen.hpp"
#include "metlie/classify.hpp"

using namespace metlie;

namespace {

WeightMatrix weights(std::vector<std::vector<long>> rows, int l) {
  std::vector<Vec> vr;
  for (auto& r : rows) {
    Vec v;
    for (long x : r) v.push_back(Rat(x));
    vr.push_back(v);
  }
  return WeightMatrix::from(Mat::from_rows(vr, l));
}

FamilySpec spec(FamilyRow row, std::vector<std::vector<long>> rows) {
  return make_family_spec(row, weights(std::move(rows), family_row_l(row)));
}

Mat mat(std::vector<std::vector<long>> rows) {
  std::vector<Vec> vr;
  for (auto& r : rows) {
    Vec v;
    for (long x : r) v.push_back(Rat(x));
    vr.push_back(v);
  }
  return Mat::from_rows(vr, vr.empty() ? 0 : int(vr[0].size()));
}

/// Random admissible weights for a row (rejection sampling).
WeightMatrix random_admissible(std::mt19937_64& rng, FamilyRow row, int m) {
  int l = family_row_l(row);
  for (;;) {
    Mat w(m, l);
    bool ok = true;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < l; ++j) w.at(i, j) = gen::rat(rng, 3, 2);
      if (vec_is_zero(w.row(i))) ok = false;
    }
    if (!ok) continue;
    WeightMatrix lam = WeightMatrix::from(w);
    if (lambda_admissible(row, lam)) return lam;
  }
}

const std::vector<FamilyRow> kTableRows = {FamilyRow::L2K0, FamilyRow::L2K1,
                                           FamilyRow::L3K0G0, FamilyRow::L3K0G1,
                                           FamilyRow::L3K1, FamilyRow::L3K2, FamilyRow::L3K3};

}  // namespace

TEST_CASE("family signatures match the tables") {
  // Two-centre oscillator with m = 3: signature (2, 2 + 2m).
  FamilySpec osc3 = spec(FamilyRow::L2K0, {{1, 0}, {0, 1}, {1, 1}});
  MetricLieAlgebra g = build(build_family(osc3));
  CHECK(signature(g.gram()) == Signature{2, 8, 0});

  // Odd family with m = 2: signature (2, 2 + 2m + 1).
  FamilySpec d2 = spec(FamilyRow::L2K1, {{1, 0}, {0, 1}});
  CHECK(signature(build(build_family(d2)).gram()) == Signature{2, 7, 0});

  // Indefinite-plane family with no rotation part: 4-dimensional, (2,2).
  FamilySpec da = spec(FamilyRow::DA, {});
  MetricLieAlgebra ga = build(build_family(da));
  CHECK(ga.dim() == 4);
  CHECK(verify(ga).ok());
  CHECK(signature(ga.gram()) == Signature{2, 2, 0});
}

TEST_CASE("bracket tables of the index-2 families, entry by entry") {
  // osc(lambda_1, lambda_2), m = 2. Basis: Z1 Z2 | X1 X2 Y1 Y2 | L1 L2.
  FamilySpec s = spec(FamilyRow::L2K0, {{1, 3}, {2, 4}});
  MetricLieAlgebra g = build(build_family(s));
  int m = 2;
  auto Z = [&](int i) { return i; };
  auto X = [&](int j) { return 2 + j; };
  auto Y = [&](int j) { return 2 + m + j; };
  auto L = [&](int i) { return 2 + 2 * m + i; };
  auto ev = [&](int i) {
    Vec v(g.dim(), Rat(0));
    v[i] = 1;
    return v;
  };
  // [X_j, Y_k] = delta_jk (lambda^j_1 Z_1 + lambda^j_2 Z_2)
  CHECK(g.bracket(X(0), Y(0)) == vec_add(ev(Z(0)), vec_scaled(ev(Z(1)), Rat(3))));
  CHECK(g.bracket(X(1), Y(1)) == vec_add(vec_scaled(ev(Z(0)), Rat(2)), vec_scaled(ev(Z(1)), Rat(4))));
  CHECK(vec_is_zero(g.bracket(X(0), Y(1))));
  CHECK(vec_is_zero(g.bracket(X(0), X(1))));
  CHECK(vec_is_zero(g.bracket(Y(0), Y(1))));
  // [L_i, X_j] = lambda^j_i Y_j, [L_i, Y_j] = -lambda^j_i X_j, [L_1, L_2] = 0
  CHECK(g.bracket(L(0), X(0)) == ev(Y(0)));
  CHECK(g.bracket(L(1), X(0)) == vec_scaled(ev(Y(0)), Rat(3)));
  CHECK(g.bracket(L(0), Y(1)) == vec_scaled(ev(X(1)), Rat(-2)));
  CHECK(vec_is_zero(g.bracket(L(0), L(1))));
  // Gram: <Z_i, L_j> = delta_ij, planes orthonormal.
  CHECK(g.gram().at(Z(0), L(0)) == 1);
  CHECK(g.gram().at(Z(0), L(1)) == 0);
  CHECK(g.gram().at(X(0), X(0)) == 1);

  // d(lambda_1, lambda_2), m = 1: additionally [L1,L2] = A0, [A0,L1] = Z2,
  // [A0,L2] = -Z1.
  FamilySpec ds = spec(FamilyRow::L2K1, {{5, 7}});
  MetricLieAlgebra h = build(build_family(ds));
  int A0 = 2 + 2;  // Z1 Z2 | X1 Y1 A0 | L1 L2
  auto hv = [&](int i) {
    Vec v(h.dim(), Rat(0));
    v[i] = 1;
    return v;
  };
  CHECK(h.bracket(5, 6) == hv(A0));                       // [L1, L2] = A0
  CHECK(h.bracket(A0, 5) == hv(1));                       // [A0, L1] = Z2
  CHECK(h.bracket(A0, 6) == vec_scaled(hv(0), Rat(-1)));  // [A0, L2] = -Z1
  CHECK(h.bracket(2, 3) == vec_add(vec_scaled(hv(0), Rat(5)), vec_scaled(hv(1), Rat(7))));
}

TEST_CASE("dA family bracket table") {
  // d_A on the indefinite plane: basis Z | E1 E2 | L with [E1,E2] = <A E1, E2> Z
  // and [L, E] = A E for A the off-diagonal involution.
  FamilySpec da = spec(FamilyRow::DA, {});
  MetricLieAlgebra g = build(build_family(da));
  auto ev = [&](int i) {
    Vec v(4, Rat(0));
    v[i] = 1;
    return v;
  };
  // A E1 = E2, A E2 = E1; <A E1, E2> = <E2, E2> = 1.
  CHECK(g.bracket(3, 1) == ev(2));
  CHECK(g.bracket(3, 2) == ev(1));
  CHECK(g.bracket(1, 2) == ev(0));
}

TEST_CASE("canonical invariants: worked examples") {
  // Columns spanning a coordinate plane: rref representative of the span.
  FamilySpec s = spec(FamilyRow::L2K0, {{1, 0}, {0, 1}, {1, 1}});
  InvariantValue v = invariant(s);
  CHECK(v.tag == InvariantValue::Tag::Grassmannian);

  // Single weight (1,2,3) for the full-alpha row: the gram value 14.
  FamilySpec g = spec(FamilyRow::L3K3, {{1, 2, 3}});
  InvariantValue vg = invariant(g);
  REQUIRE(vg.parts.size() == 1);
  CHECK(vg.parts[0].second == mat({{14}}));

  // Oscillator weights (2,4) scale to (1,2).
  FamilySpec o = spec(FamilyRow::OscL1, {{2}, {4}});
  InvariantValue vo = invariant(o);
  CHECK(vo.parts[0].second == mat({{1, 2}}));
  CHECK(vo.cert_scale == 2);
}

TEST_CASE("orbit equality under signed permutations") {
  std::mt19937_64 rng(103);
  for (FamilyRow row : kTableRows) {
    for (int iter = 0; iter < 5; ++iter) {
      int hi = std::min(family_row_min_m(row) + 2, 5);
      std::uniform_int_distribution<int> dm(family_row_min_m(row),
                                            std::max(family_row_min_m(row), hi));
      int m = dm(rng);
      WeightMatrix lam = random_admissible(rng, row, m);
      FamilySpec s1 = make_family_spec(row, lam);

      // Random signed permutation of the planes.
      SignedPerm q = SignedPerm::identity(m);
      for (int j = 0; j < m; ++j) {
        std::uniform_int_distribution<int> dj(0, m - 1 - j);
        std::swap(q.perm[j], q.perm[j + dj(rng)]);
        q.sign[j] = rng() % 2 ? 1 : -1;
      }
      FamilySpec s2 = make_family_spec(row, WeightMatrix::from(q.apply_rows(lam.entries)));
      CHECK(orbits_equal(invariant(s1), invariant(s2)));
    }
  }
}

TEST_CASE("invariance under sampled stabilizer elements") {
  std::mt19937_64 rng(107);
  for (FamilyRow row : kTableRows) {
    for (int iter = 0; iter < 4; ++iter) {
      int hi = std::min(family_row_min_m(row) + 2, 5);
      std::uniform_int_distribution<int> dm(family_row_min_m(row),
                                            std::max(family_row_min_m(row), hi));
      WeightMatrix lam = random_admissible(rng, row, dm(rng));
      FamilySpec s1 = make_family_spec(row, lam);
      Mat s = sample_stabilizer(row, rng);
      FamilySpec s2 =
          make_family_spec(row, transform_lambda(lam, SignedPerm::identity(lam.m), s));
      CHECK(orbits_equal(invariant(s1), invariant(s2)));
    }
  }
}

TEST_CASE("canonicalization is idempotent") {
  std::mt19937_64 rng(109);
  for (FamilyRow row : kTableRows) {
    WeightMatrix lam = random_admissible(rng, row, family_row_min_m(row) + 1);
    FamilySpec s1 = make_family_spec(row, lam);
    InvariantValue v1 = invariant(s1);
    // Reapply the certificate: the already-canonical weights canonicalize to
    // the same value.
    FamilySpec s2 = make_family_spec(row, WeightMatrix::from(v1.cert.apply_rows(lam.entries)));
    CHECK(orbits_equal(v1, invariant(s2)));
  }
}

TEST_CASE("scaling law for the pairing-coset invariant") {
  std::mt19937_64 rng(113);
  for (int iter = 0; iter < 10; ++iter) {
    WeightMatrix lam = random_admissible(rng, FamilyRow::L3K2, 3);
    FamilySpec s1 = make_family_spec(FamilyRow::L3K2, lam);
    // The structure element with scale c acts by (B, v) -> (c^2 B, v / c).
    Rat c = 0;
    while (c <= 0) c = abs(gen::rat(rng, 3, 2));
    Mat smat(3, 3);
    smat.at(0, 0) = 1 / c;
    smat.at(1, 1) = c;
    smat.at(2, 2) = c;
    FamilySpec s2 =
        make_family_spec(FamilyRow::L3K2, transform_lambda(lam, SignedPerm::identity(3), smat));
    CHECK(orbits_equal(invariant(s1), invariant(s2)));
  }
}

TEST_CASE("isomorphic families with witnesses") {
  // Oscillators: permuted weights are isomorphic with an explicit witness.
  FamilySpec o1 = spec(FamilyRow::OscL1, {{1}, {2}, {3}});
  FamilySpec o2 = spec(FamilyRow::OscL1, {{1}, {3}, {2}});
  IsoResult r = isomorphic_family(o1, o2);
  CHECK(r.isomorphic);
  REQUIRE(r.witness.has_value());
  WitnessCheck wc = witness_isomorphism(build_family(o1), build_family(o2), r.witness->S,
                                        r.witness->U, r.witness->tau);
  CHECK(wc.ok);

  // Scaled oscillator weights are isomorphic.
  FamilySpec o3 = spec(FamilyRow::OscL1, {{2}, {4}, {6}});
  CHECK(isomorphic_family(o1, o3).isomorphic);

  // Distinct canonical weights are not.
  FamilySpec o4 = spec(FamilyRow::OscL1, {{1}, {2}});
  FamilySpec o5 = spec(FamilyRow::OscL1, {{1}, {3}});
  CHECK_FALSE(isomorphic_family(o4, o5).isomorphic);
}

TEST_CASE("isomorphism across every table row via random group elements") {
  std::mt19937_64 rng(127);
  for (FamilyRow row : kTableRows) {
    for (int iter = 0; iter < 3; ++iter) {
      std::uniform_int_distribution<int> dm(family_row_min_m(row),
                                            family_row_min_m(row) + 1);
      WeightMatrix lam = random_admissible(rng, row, dm(rng));
      FamilySpec s1 = make_family_spec(row, lam);

      SignedPerm q = SignedPerm::identity(lam.m);
      for (int j = 0; j < lam.m; ++j) {
        std::uniform_int_distribution<int> dj(0, lam.m - 1 - j);
        std::swap(q.perm[j], q.perm[j + dj(rng)]);
        q.sign[j] = rng() % 2 ? 1 : -1;
      }
      Mat smat = sample_stabilizer(row, rng);
      FamilySpec s2 = make_family_spec(row, transform_lambda(lam, q, smat));

      IsoResult r = isomorphic_family(s1, s2);
      CHECK(r.isomorphic);
      if (r.witness) {
        WitnessCheck wc = witness_isomorphism(build_family(s1), build_family(s2),
                                              r.witness->S, r.witness->U, r.witness->tau);
        CHECK(wc.ok);
      } else {
        // Witnesses may be skipped only for irrational scales, which the
        // rational samplers never produce.
        CHECK(r.note == "");
      }
    }
  }
}

TEST_CASE("separating examples are not isomorphic") {
  // Same span, doubled wedge: distinguished by the wedge-mod-sign part.
  FamilySpec d1 = spec(FamilyRow::L2K1, {{1, 0}, {0, 1}});
  FamilySpec d2 = spec(FamilyRow::L2K1, {{1, 0}, {0, 2}});
  CHECK_FALSE(isomorphic_family(d1, d2).isomorphic);

  // Full-span columns against a degenerate span.
  FamilySpec g1 = spec(FamilyRow::L2K0, {{1, 0}, {0, 1}, {1, 1}});
  FamilySpec g2 = spec(FamilyRow::L2K0, {{1, 0}, {2, 0}, {3, 0}});
  CHECK_FALSE(isomorphic_family(g1, g2).isomorphic);

  // Different rows never compare equal.
  FamilySpec f1 = spec(FamilyRow::L3K0G0, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}});
  FamilySpec f2 = spec(FamilyRow::L3K0G1, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}});
  CHECK_FALSE(isomorphic_family(f1, f2).isomorphic);
}

TEST_CASE("built families are regular when admissible") {
  std::mt19937_64 rng(131);
  for (FamilyRow row : kTableRows) {
    WeightMatrix lam = random_admissible(rng, row, family_row_min_m(row) + 1);
    CHECK(regularity(build_family(make_family_spec(row, lam))).regular);
  }
  CHECK(regularity(build_family(spec(FamilyRow::OscL1, {{1}, {2}}))).regular);
  CHECK(regularity(build_family(spec(FamilyRow::DA, {{1}}))).regular);
}

TEST_CASE("index-2 classification") {
  // Case 2: canonical span. Oracle: brute-force minimum of the rref column
  // span over all 3! * 2^3 signed permutations, independent of the library's
  // canonicalization loop.
  FamilySpec o = spec(FamilyRow::L2K0, {{1, 0}, {0, 1}, {1, 1}});
  Index2Result r2 = classify_index2(o);
  CHECK(r2.case_id == 2);
  CHECK(r2.failure.empty());
  REQUIRE(r2.inv.has_value());
  {
    Mat w = o.lambda.entries;
    std::optional<Mat> best;
    std::vector<int> perm{0, 1, 2};
    auto lex_less = [](const Mat& a, const Mat& b) {
      if (a.rows() != b.rows()) return a.rows() < b.rows();
      for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
          if (a.at(i, j) != b.at(i, j)) return a.at(i, j) < b.at(i, j);
      return false;
    };
    do {
      for (int mask = 0; mask < 8; ++mask) {
        Mat t(3, 2);
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 2; ++c)
            t.at(perm[r], c) = ((mask >> r) & 1 ? Rat(-1) : Rat(1)) * w.at(r, c);
        Mat rr = rref(t.transpose());
        std::vector<Vec> keep;
        for (int i = 0; i < rr.rows(); ++i)
          if (!vec_is_zero(rr.row(i))) keep.push_back(rr.row(i));
        Mat span = Mat::from_rows(keep, 3);
        if (!best || lex_less(span, *best)) best = span;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(r2.inv->parts[0].second == *best);
  }

  // Case 3 accepts single-weight data as long as no weight vanishes.
  FamilySpec d = spec(FamilyRow::L2K1, {{1, 0}});
  Index2Result r3 = classify_index2(d);
  CHECK(r3.case_id == 3);
  CHECK(r3.failure.empty());

  // Case 1 sorts its parameters.
  FamilySpec da = spec(FamilyRow::DA, {{2}, {1}});
  Index2Result r1 = classify_index2(da);
  CHECK(r1.case_id == 1);
  CHECK(r1.lambda_sorted == Vec{Rat(1), Rat(2)});

  // Violations are reported, not fixed.
  CHECK_FALSE(classify_index2(spec(FamilyRow::L2K0, {{1, 0}, {2, 0}, {0, 1}})).failure.empty());
  CHECK_FALSE(classify_index2(spec(FamilyRow::L2K1, {{0, 0}})).failure.empty());
  CHECK_FALSE(classify_index2(spec(FamilyRow::DA, {{0}})).failure.empty());
  CHECK_THROWS_AS(classify_index2(spec(FamilyRow::L3K3, {})), input_error);
}

TEST_CASE("orbit bound is enforced explicitly") {
  FamilySpec s = spec(FamilyRow::L2K0, {{1, 0}, {0, 1}, {1, 1}, {1, 2}});
  CHECK_THROWS_AS(invariant(s, 3), orbit_bound_error);
  CHECK_NOTHROW(invariant(s, 4));
}

TEST_CASE("stabilizer samples preserve the row data up to an orthogonal part") {
  std::mt19937_64 rng(137);
  for (FamilyRow row : kTableRows) {
    int l = family_row_l(row), k = family_row_k(row);
    FamilySpec base = make_family_spec(row, random_admissible(rng, row, family_row_min_m(row)));
    TwofoldData d = build_family(base);
    for (int iter = 0; iter < 5; ++iter) {
      Mat s = sample_stabilizer(row, rng);
      // Pull back alpha along S and compare in the fixed part: an orthogonal
      // U must match it to alpha; the 3-form row must preserve gamma exactly.
      std::vector<Vec> from, to;
      for (const auto& t : increasing_tuples(l, 2)) {
        Vec f(k), g(k);
        Vec pulled(d.rep.a, Rat(0));
        for (const auto& u : increasing_tuples(l, 2)) {
          Rat coeff = s.at(u[0], t[0]) * s.at(u[1], t[1]) - s.at(u[1], t[0]) * s.at(u[0], t[1]);
          if (coeff != 0) pulled = vec_add(pulled, vec_scaled(d.alpha.value(u), coeff));
        }
        for (int r = 0; r < k; ++r) {
          f[r] = d.alpha.value(t)[2 * base.m + r];
          g[r] = pulled[2 * base.m + r];
        }
        from.push_back(f);
        to.push_back(g);
      }
      CHECK(extend_isometry(k, from, to).has_value());
      if (row == FamilyRow::L3K0G1) CHECK(det(s) == 1);
    }
  }
}
