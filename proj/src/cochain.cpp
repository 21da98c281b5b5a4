#include "metlie/cochain.hpp"

#include <algorithm>

namespace metlie {

namespace {

// Sorts idx in place; returns 0 if any index repeats, else the sign of the
// sorting permutation.
int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (size_t i = 0; i + 1 < idx.size(); ++i)
    for (size_t j = 0; j + 1 < idx.size() - i; ++j)
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
  for (size_t i = 0; i + 1 < idx.size(); ++i)
    if (idx[i] == idx[i + 1]) return 0;
  return sign;
}

void check_tuple(const std::vector<int>& idx, int deg, int l) {
  if (int(idx.size()) != deg) throw input_error("tuple arity mismatch");
  for (size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= l) throw input_error("tuple index out of range");
    if (i + 1 < idx.size() && idx[i] >= idx[i + 1])
      throw input_error("tuple not strictly increasing");
  }
}

}  // namespace

void Rep::validate() const {
  if (l < 0 || a < 0) throw input_error("negative dimension");
  if (gramA.rows() != a || gramA.cols() != a) throw input_error("gramA size mismatch");
  if (!gramA.is_symmetric()) throw input_error("gramA not symmetric");
  if (signature(gramA).null != 0) throw input_error("gramA degenerate");
  if (int(rho.size()) != l) throw input_error("rho count != dim l");
  for (const Mat& r : rho) {
    if (r.rows() != a || r.cols() != a) throw input_error("rho size mismatch");
    if (!(r.transpose() * gramA + gramA * r).is_zero())
      throw input_error("rho not antisymmetric w.r.t. gramA");
  }
  for (size_t i = 0; i < rho.size(); ++i)
    for (size_t j = i + 1; j < rho.size(); ++j)
      if (!(rho[i] * rho[j] - rho[j] * rho[i]).is_zero())
        throw input_error("rho matrices do not commute");
}

void Cochain::set(std::vector<int> idx, Vec v) {
  check_tuple(idx, deg, l);
  if (int(v.size()) != a) throw input_error("cochain value dimension mismatch");
  if (vec_is_zero(v))
    vals.erase(idx);
  else
    vals[std::move(idx)] = std::move(v);
}

Vec Cochain::value(const std::vector<int>& idx) const {
  auto it = vals.find(idx);
  if (it == vals.end()) return Vec(a, Rat(0));
  return it->second;
}

Vec Cochain::eval(std::vector<int> idx) const {
  int sign = sort_sign(idx);
  if (sign == 0) return Vec(a, Rat(0));
  Vec v = value(idx);
  return sign == 1 ? v : vec_scaled(v, Rat(-1));
}

bool Cochain::is_zero() const {
  for (const auto& [k, v] : vals)
    if (!vec_is_zero(v)) return false;
  return true;
}

Cochain Cochain::operator+(const Cochain& o) const {
  if (deg != o.deg || l != o.l || a != o.a) throw input_error("cochain sum shape mismatch");
  Cochain r = *this;
  for (const auto& [k, v] : o.vals) r.set(k, vec_add(r.value(k), v));
  return r;
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + o.scaled(Rat(-1)); }

Cochain Cochain::scaled(const Rat& c) const {
  Cochain r = Cochain::zero(deg, l, a);
  if (c == 0) return r;
  for (const auto& [k, v] : vals) r.set(k, vec_scaled(v, c));
  return r;
}

bool Cochain::operator==(const Cochain& o) const {
  return deg == o.deg && l == o.l && a == o.a && (*this - o).is_zero();
}

void ScalarForm::set(std::vector<int> idx, Rat v) {
  check_tuple(idx, deg, l);
  if (v == 0)
    vals.erase(idx);
  else
    vals[std::move(idx)] = std::move(v);
}

Rat ScalarForm::value(const std::vector<int>& idx) const {
  auto it = vals.find(idx);
  if (it == vals.end()) return 0;
  return it->second;
}

Rat ScalarForm::eval(std::vector<int> idx) const {
  int sign = sort_sign(idx);
  if (sign == 0) return 0;
  return Rat(sign) * value(idx);
}

bool ScalarForm::is_zero() const {
  for (const auto& [k, v] : vals)
    if (v != 0) return false;
  return true;
}

ScalarForm ScalarForm::operator+(const ScalarForm& o) const {
  if (deg != o.deg || l != o.l) throw input_error("form sum shape mismatch");
  ScalarForm r = *this;
  for (const auto& [k, v] : o.vals) r.set(k, r.value(k) + v);
  return r;
}

ScalarForm ScalarForm::operator-(const ScalarForm& o) const { return *this + o.scaled(Rat(-1)); }

ScalarForm ScalarForm::scaled(const Rat& c) const {
  ScalarForm r = ScalarForm::zero(deg, l);
  if (c == 0) return r;
  for (const auto& [k, v] : vals) r.set(k, v * c);
  return r;
}

bool ScalarForm::operator==(const ScalarForm& o) const {
  return deg == o.deg && l == o.l && (*this - o).is_zero();
}

std::vector<std::vector<int>> increasing_tuples(int l, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > l) return out;
  std::vector<int> t(k);
  for (int i = 0; i < k; ++i) t[i] = i;
  for (;;) {
    out.push_back(t);
    int i = k - 1;
    while (i >= 0 && t[i] == l - k + i) --i;
    if (i < 0) break;
    ++t[i];
    for (int j = i + 1; j < k; ++j) t[j] = t[j - 1] + 1;
  }
  if (k == 0) out = {std::vector<int>{}};
  return out;
}

static Cochain differential_impl(const Rep& rep, const Cochain& c) {
  Cochain d = Cochain::zero(c.deg + 1, c.l, c.a);
  for (const auto& tuple : increasing_tuples(c.l, c.deg + 1)) {
    Vec total(c.a, Rat(0));
    for (int i = 0; i < c.deg + 1; ++i) {
      std::vector<int> rest;
      rest.reserve(c.deg);
      for (int j = 0; j < c.deg + 1; ++j)
        if (j != i) rest.push_back(tuple[j]);
      Vec v = rep.rho[tuple[i]] * c.value(rest);
      if (i % 2 == 1) v = vec_scaled(v, Rat(-1));
      total = vec_add(total, v);
    }
    d.set(tuple, total);
  }
  return d;
}

Cochain differential(const Rep& rep, const Cochain& c) {
  if (c.l != rep.l || c.a != rep.a) throw input_error("cochain does not match rep");
  if (c.deg >= c.l) throw input_error("differential at top degree");
  return differential_impl(rep, c);
}

Cochain differential_or_zero(const Rep& rep, const Cochain& c) {
  if (c.l != rep.l || c.a != rep.a) throw input_error("cochain does not match rep");
  if (c.deg >= c.l) return Cochain::zero(c.deg + 1, c.l, c.a);
  return differential_impl(rep, c);
}

static ScalarForm wedge_impl(const Rep& rep, const Cochain& x, const Cochain& y) {
  int p = x.deg, q = y.deg;
  ScalarForm out = ScalarForm::zero(p + q, x.l);
  for (const auto& tuple : increasing_tuples(x.l, p + q)) {
    Rat total = 0;
    // Sum over (p,q)-shuffles: choose the positions handed to x.
    for (const auto& sel : increasing_tuples(p + q, p)) {
      std::vector<int> xs, ys;
      std::vector<bool> used(p + q, false);
      int inversions = 0;
      for (int i = 0; i < p; ++i) {
        xs.push_back(tuple[sel[i]]);
        used[sel[i]] = true;
        inversions += sel[i] - i;
      }
      for (int i = 0; i < p + q; ++i)
        if (!used[i]) ys.push_back(tuple[i]);
      Rat term = dot_g(x.value(xs), rep.gramA, y.value(ys));
      total += (inversions % 2 == 0) ? term : -term;
    }
    out.set(tuple, total);
  }
  return out;
}

ScalarForm wedge_inner(const Rep& rep, const Cochain& x, const Cochain& y) {
  if (x.l != rep.l || y.l != rep.l || x.a != rep.a || y.a != rep.a)
    throw input_error("wedge operands do not match rep");
  if (x.deg + y.deg > x.l) throw input_error("wedge degree overflow");
  return wedge_impl(rep, x, y);
}

ScalarForm wedge_inner_or_zero(const Rep& rep, const Cochain& x, const Cochain& y) {
  if (x.deg + y.deg > x.l) return ScalarForm::zero(x.deg + y.deg, x.l);
  return wedge_impl(rep, x, y);
}

bool check_cocycle(const Rep& rep, const Cochain& alpha) {
  return differential_or_zero(rep, alpha).is_zero();
}

bool check_EK(const Rep& rep, const Cochain& alpha) {
  if (alpha.deg != 2) throw input_error("EK check expects a degree-2 cochain");
  for (const auto& t : increasing_tuples(alpha.l, 4)) {
    Rat s = dot_g(alpha.eval({t[0], t[1]}), rep.gramA, alpha.eval({t[2], t[3]})) +
            dot_g(alpha.eval({t[1], t[2]}), rep.gramA, alpha.eval({t[0], t[3]})) +
            dot_g(alpha.eval({t[2], t[0]}), rep.gramA, alpha.eval({t[1], t[3]}));
    if (s != 0) return false;
  }
  return true;
}

bool cup_selfcheck(const Rep& rep, const Cochain& alpha) {
  return wedge_inner_or_zero(rep, alpha, alpha).scaled(Rat(1, 2)).is_zero();
}

std::pair<Cochain, ScalarForm> act(const Rep& rep, const Cochain& alpha,
                                   const ScalarForm& gamma, const Cochain& tau) {
  if (tau.deg != 1 || alpha.deg != 2 || gamma.deg != 3)
    throw input_error("act expects (deg 2, deg 3, deg 1)");
  Cochain dtau = differential_or_zero(rep, tau);
  Cochain alpha2 = alpha + dtau;
  ScalarForm gamma2 =
      gamma + wedge_inner_or_zero(rep, alpha + dtau.scaled(Rat(1, 2)), tau);
  return {alpha2, gamma2};
}

NilSplit nil_split(const Rep& rep) {
  Signature s = signature(rep.gramA);
  if (s.neg != 0 || s.null != 0)
    throw unsupported_case("nil_split requires positive definite gramA");
  Mat stacked(0, rep.a);
  for (const Mat& r : rep.rho) stacked = stacked.vstack(r);
  Subspace inv = rep.l == 0 ? Subspace::full(rep.a) : Subspace::span(rep.a, nullspace(stacked));
  Subspace mov = orthogonal_complement(inv, rep.gramA);
  return {inv, mov};
}

ScalarForm gamma_orbit_reduce(const Rep& rep, const Cochain& alpha, const ScalarForm& gamma) {
  if (alpha.deg != 2 || gamma.deg != 3) throw input_error("expected (alpha deg 2, gamma deg 3)");
  for (const auto& [k, v] : alpha.vals)
    for (const Mat& r : rep.rho)
      if (!vec_is_zero(r * v)) throw input_error("alpha not valued in the invariant subspace");
  if (rep.l < 3) return gamma;

  NilSplit ns = nil_split(rep);
  auto triples = increasing_tuples(rep.l, 3);
  auto coords_of = [&](const ScalarForm& f) {
    Vec c(triples.size());
    for (size_t i = 0; i < triples.size(); ++i) c[i] = f.value(triples[i]);
    return c;
  };

  std::vector<Vec> w_rows;
  for (int j = 0; j < rep.l; ++j)
    for (int b = 0; b < ns.invariants.dim(); ++b) {
      Cochain tau = Cochain::zero(1, rep.l, rep.a);
      tau.set({j}, ns.invariants.basis_vector(b));
      w_rows.push_back(coords_of(wedge_inner(rep, alpha, tau)));
    }
  Mat w = rref(Mat::from_rows(w_rows, int(triples.size())));

  // Eliminate gamma's coordinates against the rref rows of W.
  Vec gcoords = coords_of(gamma);
  for (int i = 0; i < w.rows(); ++i) {
    int lead = -1;
    for (int j = 0; j < w.cols(); ++j)
      if (w.at(i, j) != 0) { lead = j; break; }
    if (lead < 0) continue;
    if (gcoords[lead] != 0) {
      Rat f = gcoords[lead];
      for (int j = 0; j < w.cols(); ++j) gcoords[j] -= f * w.at(i, j);
    }
  }
  ScalarForm out = ScalarForm::zero(3, rep.l);
  for (size_t i = 0; i < triples.size(); ++i) out.set(triples[i], gcoords[i]);
  return out;
}

}  // namespace metlie
