#include "metlie/twofold.hpp"

#include <stdexcept>

namespace metlie {

namespace {

Vec unit(int n, int i) {
  Vec v(n, Rat(0));
  v[i] = 1;
  return v;
}

/// Bilinear pullback (S* c)(i,j) = c(S e_i, S e_j) for a degree-2 cochain.
Cochain pullback2(const Cochain& c, const Mat& S) {
  Cochain out = Cochain::zero(2, c.l, c.a);
  for (const auto& t : increasing_tuples(c.l, 2)) {
    Vec total(c.a, Rat(0));
    for (const auto& s : increasing_tuples(c.l, 2)) {
      Rat coeff = S.at(s[0], t[0]) * S.at(s[1], t[1]) - S.at(s[1], t[0]) * S.at(s[0], t[1]);
      if (coeff == 0) continue;
      total = vec_add(total, vec_scaled(c.value(s), coeff));
    }
    out.set(t, total);
  }
  return out;
}

ScalarForm pullback3(const ScalarForm& f, const Mat& S) {
  ScalarForm out = ScalarForm::zero(3, f.l);
  for (const auto& t : increasing_tuples(f.l, 3)) {
    Rat total = 0;
    for (const auto& s : increasing_tuples(f.l, 3)) {
      Mat m(3, 3);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m.at(r, c) = S.at(s[r], t[c]);
      Rat coeff = det(m);
      if (coeff != 0) total += coeff * f.value(s);
    }
    out.set(t, total);
  }
  return out;
}

}  // namespace

void TwofoldData::validate() const {
  rep.validate();
  if (alpha.deg != 2 || alpha.l != rep.l || alpha.a != rep.a)
    throw input_error("alpha shape mismatch");
  if (gamma.deg != 3 || gamma.l != rep.l) throw input_error("gamma shape mismatch");
  for (const auto& [k, v] : alpha.vals)
    if (int(v.size()) != rep.a) throw input_error("alpha value dimension mismatch");
  if (!check_cocycle(rep, alpha)) throw input_error("alpha is not a cocycle");
  if (!check_EK(rep, alpha)) throw input_error("alpha violates the four-index quadratic identity");
}

MetricLieAlgebra build(const TwofoldData& data) {
  data.validate();
  int l = data.rep.l, a = data.rep.a;
  int n = 2 * l + a;
  const Mat& G = data.rep.gramA;

  Mat gram(n, n);
  for (int i = 0; i < l; ++i) {
    gram.at(i, l + a + i) = 1;
    gram.at(l + a + i, i) = 1;
  }
  for (int b = 0; b < a; ++b)
    for (int c = 0; c < a; ++c) gram.at(l + b, l + c) = G.at(b, c);

  MetricLieAlgebra g(n, gram);

  // [A_b, A_c] = sum_k <rho(L_k) A_b, A_c> Z_k
  for (int b = 0; b < a; ++b)
    for (int c = b + 1; c < a; ++c) {
      Vec v(n, Rat(0));
      for (int k = 0; k < l; ++k)
        v[k] = dot_g(data.rep.rho[k] * unit(a, b), G, unit(a, c));
      g.set_bracket(l + b, l + c, v);
    }

  // [A_b, L_j] = <A_b, alpha(L_j, .)> - rho(L_j) A_b
  for (int b = 0; b < a; ++b)
    for (int j = 0; j < l; ++j) {
      Vec v(n, Rat(0));
      for (int k = 0; k < l; ++k)
        v[k] = dot_g(unit(a, b), G, data.alpha.eval({j, k}));
      Vec rab = data.rep.rho[j] * unit(a, b);
      for (int c = 0; c < a; ++c) v[l + c] = -rab[c];
      g.set_bracket(l + b, l + a + j, v);
    }

  // [L_i, L_j] = gamma(L_i, L_j, .) + alpha(L_i, L_j)
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) {
      Vec v(n, Rat(0));
      for (int k = 0; k < l; ++k) v[k] = data.gamma.eval({i, j, k});
      Vec av = data.alpha.value({i, j});
      for (int c = 0; c < a; ++c) v[l + c] = av[c];
      g.set_bracket(l + a + i, l + a + j, v);
    }

  return g;
}

RegularityReport regularity(const TwofoldData& data) {
  data.validate();
  int l = data.rep.l, a = data.rep.a;
  const Mat& G = data.rep.gramA;
  std::vector<Vec> rows;

  // rho(L0) = 0
  for (int r = 0; r < a; ++r)
    for (int c = 0; c < a; ++c) {
      Vec row(l + a, Rat(0));
      bool nz = false;
      for (int j = 0; j < l; ++j) {
        row[j] = data.rep.rho[j].at(r, c);
        nz = nz || row[j] != 0;
      }
      if (nz) rows.push_back(row);
    }

  // rho(L_i) A0 = alpha(L0, L_i)
  for (int i = 0; i < l; ++i)
    for (int r = 0; r < a; ++r) {
      Vec row(l + a, Rat(0));
      for (int j = 0; j < l; ++j) row[j] = -data.alpha.eval({j, i})[r];
      for (int b = 0; b < a; ++b) row[l + b] = data.rep.rho[i].at(r, b);
      rows.push_back(row);
    }

  // gamma(L0, L_i, L_j) = <A0, alpha(L_i, L_j)>
  for (const auto& t : increasing_tuples(l, 2)) {
    Vec row(l + a, Rat(0));
    for (int k = 0; k < l; ++k) row[k] = data.gamma.eval({k, t[0], t[1]});
    Vec ga = G * data.alpha.value(t);
    for (int b = 0; b < a; ++b) row[l + b] -= ga[b];
    rows.push_back(row);
  }

  RegularityReport rep;
  if (rows.empty()) {
    // No constraints: every (L0, A0) is central.
    for (int i = 0; i < l + a; ++i) rep.witnesses.push_back(unit(l + a, i));
  } else {
    rep.witnesses = nullspace(Mat::from_rows(rows, l + a));
  }
  rep.regular = rep.witnesses.empty();
  return rep;
}

Extraction extract(const MetricLieAlgebra& g) {
  VerifyReport vr = verify(g);
  if (!vr.ok()) {
    std::string which = !vr.antisymmetry.pass ? "antisymmetry"
                        : !vr.jacobi.pass     ? "jacobi"
                        : !vr.invariance.pass ? "invariance"
                                              : "nondegeneracy";
    throw extract_error("input fails verification: " + which);
  }
  int n = g.dim();
  Subspace gp = derived(g);
  if (gp.dim() == 0) throw extract_error("abelian algebra has no twofold presentation here");
  Subspace z = centre(g);
  if (!(z.basis() * g.gram() * z.basis().transpose()).is_zero())
    throw extract_error("centre not isotropic");
  if (!z.contains(bracket_space(g, gp, gp)))
    throw extract_error("derived-mod-centre not abelian");

  int l = z.dim();
  int a = n - 2 * l;

  // Complement of g' spanned by standard basis vectors at non-pivot columns.
  std::vector<bool> pivot(n, false);
  for (int i = 0; i < gp.dim(); ++i)
    for (int j = 0; j < n; ++j)
      if (gp.basis().at(i, j) != 0) { pivot[j] = true; break; }
  std::vector<Vec> w;
  for (int j = 0; j < n; ++j)
    if (!pivot[j]) w.push_back(unit(n, j));
  if (int(w.size()) != l) throw std::logic_error("complement dimension mismatch");

  // Dual basis zhat_j in the centre: <zhat_j, w_k> = delta_jk.
  Mat pairing(l, l);
  for (int r = 0; r < l; ++r)
    for (int k = 0; k < l; ++k) pairing.at(r, k) = dot_g(z.basis_vector(r), g.gram(), w[k]);
  auto pinv = inverse(pairing);
  if (!pinv) throw std::logic_error("degenerate centre/complement pairing");
  std::vector<Vec> zhat(l);
  for (int j = 0; j < l; ++j) {
    Vec v(n, Rat(0));
    for (int r = 0; r < l; ++r) v = vec_add(v, vec_scaled(z.basis_vector(r), pinv->at(r, j)));
    zhat[j] = v;
  }

  // Isotropy correction: w_j -> w_j - 1/2 sum_k <w_j, w_k> zhat_k.
  std::vector<Vec> ws(l);
  for (int j = 0; j < l; ++j) {
    Vec v = w[j];
    for (int k = 0; k < l; ++k) {
      Rat c = dot_g(w[j], g.gram(), w[k]) / 2;
      if (c != 0) v = vec_sub(v, vec_scaled(zhat[k], c));
    }
    ws[j] = v;
  }

  // a-section: s(l)^perp intersected with g'.
  Subspace sspan = Subspace::span(n, ws);
  Subspace tspace = orthogonal_complement(sspan, g.gram()).intersect(gp);
  if (tspace.dim() != a) throw std::logic_error("a-section dimension mismatch");

  Mat P(n, n);
  for (int j = 0; j < l; ++j)
    for (int r = 0; r < n; ++r) P.at(r, j) = zhat[j][r];
  for (int b = 0; b < a; ++b)
    for (int r = 0; r < n; ++r) P.at(r, l + b) = tspace.basis_vector(b)[r];
  for (int j = 0; j < l; ++j)
    for (int r = 0; r < n; ++r) P.at(r, l + a + j) = ws[j][r];
  auto Pinv_opt = inverse(P);
  if (!Pinv_opt) throw std::logic_error("section matrix not invertible");
  Mat Pinv = *Pinv_opt;

  Rep rep;
  rep.l = l;
  rep.a = a;
  rep.gramA = tspace.basis() * g.gram() * tspace.basis().transpose();
  rep.rho.assign(l, Mat(a, a));
  for (int j = 0; j < l; ++j)
    for (int b = 0; b < a; ++b) {
      Vec coords = Pinv * g.bracket(ws[j], tspace.basis_vector(b));
      for (int k = 0; k < l; ++k)
        if (coords[l + a + k] != 0) throw std::logic_error("rho image leaves g'");
      for (int r = 0; r < a; ++r) rep.rho[j].at(r, b) = coords[l + r];
    }

  Cochain alpha = Cochain::zero(2, l, a);
  for (const auto& t : increasing_tuples(l, 2)) {
    Vec coords = Pinv * g.bracket(ws[t[0]], ws[t[1]]);
    Vec av(a);
    for (int r = 0; r < a; ++r) av[r] = coords[l + r];
    alpha.set(t, av);
  }

  ScalarForm gamma = ScalarForm::zero(3, l);
  for (const auto& t : increasing_tuples(l, 3))
    gamma.set(t, dot_g(g.bracket(ws[t[0]], ws[t[1]]), g.gram(), ws[t[2]]));

  Extraction ex{TwofoldData{rep, alpha, gamma}, P};
  ex.data.validate();

  // The columns of P must implement an isometric isomorphism.
  MetricLieAlgebra d = build(ex.data);
  if (!(P.transpose() * g.gram() * P == d.gram()))
    throw std::logic_error("extraction is not an isometry");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec lhs = P * d.bracket(i, j);
      Vec rhs = g.bracket(P.col(i), P.col(j));
      if (lhs != rhs) throw std::logic_error("extraction is not a Lie isomorphism");
    }
  if (!regularity(ex.data).regular) throw std::logic_error("extracted data not regular");
  return ex;
}

std::optional<Cochain> extension_equivalent(const TwofoldData& d1, const TwofoldData& d2) {
  if (!(d1.rep == d2.rep)) throw input_error("extension equivalence requires identical reps");
  d1.validate();
  d2.validate();
  int l = d1.rep.l, a = d1.rep.a;
  int nvar = l * a;  // tau(L_j)_b at index j*a + b

  auto tau_from = [&](const Vec& x) {
    Cochain t = Cochain::zero(1, l, a);
    for (int j = 0; j < l; ++j) {
      Vec v(a);
      for (int b = 0; b < a; ++b) v[b] = x[j * a + b];
      t.set({j}, v);
    }
    return t;
  };

  // Stage (a): d tau = alpha2 - alpha1.
  Cochain da = d2.alpha - d1.alpha;
  std::vector<Vec> rows;
  Vec rhs;
  for (const auto& t : increasing_tuples(l, 2))
    for (int r = 0; r < a; ++r) {
      Vec row(nvar, Rat(0));
      for (int b = 0; b < a; ++b) {
        row[t[1] * a + b] += d1.rep.rho[t[0]].at(r, b);
        row[t[0] * a + b] -= d1.rep.rho[t[1]].at(r, b);
      }
      rows.push_back(row);
      rhs.push_back(da.value(t)[r]);
    }
  std::optional<SolveResult> sol;
  if (rows.empty())
    sol = SolveResult{Vec(nvar, Rat(0)), nullspace(Mat(0, nvar))};
  else
    sol = solve(Mat::from_rows(rows, nvar), rhs);
  if (!sol) return std::nullopt;

  Cochain tau0 = tau_from(sol->particular);
  std::vector<Cochain> zetas;
  for (const Vec& k : sol->kernel) zetas.push_back(tau_from(k));

  // Stage (b): <alpha1 wedge zeta> = gamma2 - gamma1 - <(alpha1 + 1/2 d tau0) wedge tau0>,
  // linear in zeta in the kernel of stage (a).
  Cochain dtau0 = differential_or_zero(d1.rep, tau0);
  ScalarForm target = d2.gamma - d1.gamma -
                      wedge_inner_or_zero(d1.rep, d1.alpha + dtau0.scaled(Rat(1, 2)), tau0);
  auto triples = increasing_tuples(l, 3);
  Mat m(int(triples.size()), int(zetas.size()));
  for (size_t s = 0; s < zetas.size(); ++s) {
    ScalarForm w = wedge_inner_or_zero(d1.rep, d1.alpha, zetas[s]);
    for (size_t r = 0; r < triples.size(); ++r) m.at(int(r), int(s)) = w.value(triples[r]);
  }
  Vec trhs(triples.size());
  for (size_t r = 0; r < triples.size(); ++r) trhs[r] = target.value(triples[r]);
  auto csol = solve(m, trhs);
  if (!csol) return std::nullopt;

  Cochain tau = tau0;
  for (size_t s = 0; s < zetas.size(); ++s)
    tau = tau + zetas[s].scaled(csol->particular[s]);

  // Validate the reduction against the defining equations directly.
  auto [a2, g2] = act(d1.rep, d1.alpha, d1.gamma, tau);
  if (!(a2 == d2.alpha) || !(g2 == d2.gamma))
    throw std::logic_error("equivalence witness failed direct validation");
  return tau;
}

Mat psi_matrix(const Rep& rep, const Cochain& tau) {
  int l = rep.l, a = rep.a;
  Mat T(a, l);
  for (int j = 0; j < l; ++j) {
    Vec v = tau.value({j});
    for (int b = 0; b < a; ++b) T.at(b, j) = v[b];
  }
  Mat tstar = T.transpose() * rep.gramA;      // l x a
  Mat corner = (tstar * T).scaled(Rat(-1, 2));  // l x l
  Mat psi = Mat::identity(2 * l + a);
  for (int i = 0; i < l; ++i) {
    for (int b = 0; b < a; ++b) psi.at(i, l + b) = tstar.at(i, b);
    for (int j = 0; j < l; ++j) psi.at(i, l + a + j) = corner.at(i, j);
  }
  for (int b = 0; b < a; ++b)
    for (int j = 0; j < l; ++j) psi.at(l + b, l + a + j) = -T.at(b, j);
  return psi;
}

TwofoldData transport(const TwofoldData& d2, const Mat& S, const Mat& U) {
  int l = d2.rep.l, a = d2.rep.a;
  if (S.rows() != l || S.cols() != l || U.rows() != a || U.cols() != a)
    throw input_error("transport shape mismatch");
  auto Uinv = inverse(U);
  auto Sinv = inverse(S);
  if (!Uinv || !Sinv) throw input_error("transport requires invertible S, U");

  Rep rep;
  rep.l = l;
  rep.a = a;
  rep.gramA = U.transpose() * d2.rep.gramA * U;
  for (int j = 0; j < l; ++j) {
    Mat rj(a, a);
    for (int k = 0; k < l; ++k)
      if (S.at(k, j) != 0) rj = rj + d2.rep.rho[k].scaled(S.at(k, j));
    rep.rho.push_back(*Uinv * rj * U);
  }

  Cochain alpha = pullback2(d2.alpha, S);
  for (auto& [k, v] : alpha.vals) v = *Uinv * v;
  ScalarForm gamma = pullback3(d2.gamma, S);
  return TwofoldData{rep, alpha, gamma};
}

WitnessCheck witness_isomorphism(const TwofoldData& d1, const TwofoldData& d2, const Mat& S,
                                 const Mat& U, const Cochain& tau) {
  WitnessCheck out;
  if (d1.rep.l != d2.rep.l || d1.rep.a != d2.rep.a) {
    out.failed = "dimension mismatch";
    return out;
  }
  int l = d1.rep.l, a = d1.rep.a;
  if (S.rows() != l || S.cols() != l || U.rows() != a || U.cols() != a ||
      tau.deg != 1 || tau.l != l || tau.a != a) {
    out.failed = "witness shape mismatch";
    return out;
  }
  auto Sinv = inverse(S);
  if (!Sinv) {
    out.failed = "S not invertible";
    return out;
  }
  if (!(U.transpose() * d2.rep.gramA * U == d1.rep.gramA)) {
    out.failed = "U not an isometry";
    return out;
  }
  auto Uinv = inverse(U);

  // Conjugation equation on the representations.
  for (int j = 0; j < l; ++j) {
    Mat rj(a, a);
    for (int k = 0; k < l; ++k)
      if (S.at(k, j) != 0) rj = rj + d2.rep.rho[k].scaled(S.at(k, j));
    if (!(U * d1.rep.rho[j] - rj * U).is_zero()) {
      out.failed = "rho conjugation";
      return out;
    }
  }

  // Alpha equation: U^-1 alpha2(S., S.) - alpha1 = d tau.
  Cochain pulled = pullback2(d2.alpha, S);
  for (auto& [k, v] : pulled.vals) v = *Uinv * v;
  Cochain dtau = differential_or_zero(d1.rep, tau);
  if (!(pulled - d1.alpha == dtau)) {
    out.failed = "alpha compatibility";
    return out;
  }

  // Gamma equation: gamma2(S.,S.,S.) - gamma1 = <(alpha1 + 1/2 d tau) wedge tau>.
  ScalarForm lhs = pullback3(d2.gamma, S) - d1.gamma;
  ScalarForm rhsf = wedge_inner_or_zero(d1.rep, d1.alpha + dtau.scaled(Rat(1, 2)), tau);
  if (!(lhs == rhsf)) {
    out.failed = "gamma compatibility";
    return out;
  }

  // Compose (S^-*, U, S) with the triangular isometry of tau and verify.
  int n = 2 * l + a;
  Mat blocks(n, n);
  Mat sit = Sinv->transpose();
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) blocks.at(i, j) = sit.at(i, j);
  for (int b = 0; b < a; ++b)
    for (int c = 0; c < a; ++c) blocks.at(l + b, l + c) = U.at(b, c);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) blocks.at(l + a + i, l + a + j) = S.at(i, j);
  Mat F = blocks * psi_matrix(d1.rep, tau);

  MetricLieAlgebra b1 = build(d1), b2 = build(d2);
  if (!(F.transpose() * b2.gram() * F == b1.gram())) {
    out.failed = "composed map not an isometry";
    return out;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (F * b1.bracket(i, j) != b2.bracket(F.col(i), F.col(j))) {
        out.failed = "composed map not a Lie homomorphism";
        return out;
      }
  out.ok = true;
  out.iso = F;
  return out;
}

}  // namespace metlie
