#include "metlie/classify.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace metlie {

namespace {

Vec unit(int n, int i) {
  Vec v(n, Rat(0));
  v[i] = 1;
  return v;
}

std::string serialize_parts(const std::vector<std::pair<std::string, Mat>>& parts) {
  std::ostringstream os;
  for (const auto& [label, m] : parts) {
    os << label << ":" << m.rows() << "x" << m.cols() << ":";
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) os << rat_str(m.at(i, j)) << ",";
    os << ";";
  }
  return os.str();
}

// Row-major lexicographic comparison of payload lists with numeric entry
// order; same minimizer every run, no string building in the hot loop.
int cmp_parts(const std::vector<std::pair<std::string, Mat>>& x,
              const std::vector<std::pair<std::string, Mat>>& y) {
  for (size_t p = 0; p < x.size() && p < y.size(); ++p) {
    if (int c = x[p].first.compare(y[p].first); c != 0) return c < 0 ? -1 : 1;
    const Mat &a = x[p].second, &b = y[p].second;
    if (a.rows() != b.rows()) return a.rows() < b.rows() ? -1 : 1;
    if (a.cols() != b.cols()) return a.cols() < b.cols() ? -1 : 1;
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) {
        int c = cmp(a.at(i, j), b.at(i, j));
        if (c != 0) return c < 0 ? -1 : 1;
      }
  }
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  return 0;
}

/// rref basis of the column span, as rows in Q^m.
Mat colspan_rref(const Mat& w) {
  Mat r = rref(w.transpose());
  std::vector<Vec> keep;
  for (int i = 0; i < r.rows(); ++i)
    if (!vec_is_zero(r.row(i))) keep.push_back(r.row(i));
  return Mat::from_rows(keep, w.rows());
}

Vec wedge2_coords(const Vec& x, const Vec& y) {
  int m = int(x.size());
  Vec out;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) out.push_back(x[i] * y[j] - x[j] * y[i]);
  return out;
}

Vec wedge3_coords(const Vec& x, const Vec& y, const Vec& z) {
  int m = int(x.size());
  Vec out;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k)
        out.push_back(x[i] * (y[j] * z[k] - y[k] * z[j]) - y[i] * (x[j] * z[k] - x[k] * z[j]) +
                      z[i] * (x[j] * y[k] - x[k] * y[j]));
  return out;
}

void sign_normalize(Vec& v) {
  for (const Rat& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (Rat& y : v) y = -y;
    break;
  }
}

Vec reduce_mod_rows(Vec v, const Mat& rr) {
  for (int i = 0; i < rr.rows(); ++i) {
    int lead = -1;
    for (int j = 0; j < rr.cols(); ++j)
      if (rr.at(i, j) != 0) { lead = j; break; }
    if (lead < 0) continue;
    if (v[lead] != 0) {
      Rat f = v[lead] / rr.at(i, lead);
      for (int j = 0; j < rr.cols(); ++j) v[j] -= f * rr.at(i, j);
    }
  }
  return v;
}

bool is_rational_square(const Rat& x, Rat& root) {
  if (x < 0) return false;
  if (x == 0) { root = 0; return true; }
  mpz_class num = x.get_num(), den = x.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    root = Rat(rn, rd);
    root.canonicalize();
    return true;
  }
  return false;
}

struct Payload {
  std::vector<std::pair<std::string, Mat>> parts;
  Rat scale = 1;
};

Mat row_mat(const Vec& v) {
  Mat m(1, int(v.size()));
  for (size_t i = 0; i < v.size(); ++i) m.at(0, int(i)) = v[i];
  return m;
}

Payload payload_for(FamilyRow row, const Mat& w) {
  Payload p;
  switch (row) {
    case FamilyRow::L2K0:
    case FamilyRow::L3K0G0:
      p.parts.emplace_back("span", colspan_rref(w));
      return p;
    case FamilyRow::L2K1: {
      p.parts.emplace_back("span", colspan_rref(w));
      Vec om = wedge2_coords(w.col(0), w.col(1));
      sign_normalize(om);
      p.parts.emplace_back("omega", row_mat(om));
      return p;
    }
    case FamilyRow::L3K0G1: {
      p.parts.emplace_back("span", colspan_rref(w));
      p.parts.emplace_back("omega", row_mat(wedge3_coords(w.col(0), w.col(1), w.col(2))));
      return p;
    }
    case FamilyRow::L3K1: {
      p.parts.emplace_back("span", colspan_rref(w));
      p.parts.emplace_back("line", colspan_rref(Mat::col_vector(w.col(2))));
      Mat modspace = rref(Mat::from_rows(
          {wedge2_coords(w.col(2), w.col(0)), wedge2_coords(w.col(2), w.col(1))},
          int(wedge2_coords(w.col(0), w.col(1)).size())));
      Vec om = reduce_mod_rows(wedge2_coords(w.col(0), w.col(1)), modspace);
      sign_normalize(om);
      p.parts.emplace_back("omega-mod-line", row_mat(om));
      return p;
    }
    case FamilyRow::L3K2: {
      int m = w.rows();
      Mat pm(m, 2);
      for (int i = 0; i < m; ++i) {
        pm.at(i, 0) = w.at(i, 1);
        pm.at(i, 1) = w.at(i, 2);
      }
      Mat b = pm * pm.transpose();
      Vec v = w.col(0);
      if (b.is_zero()) {
        Vec r = v;
        for (const Rat& x : r) {
          if (x == 0) continue;
          Rat f = 1 / x;
          for (Rat& y : r) y *= f;
          break;
        }
        p.parts.emplace_back("b", b);
        p.parts.emplace_back("v-normalized", row_mat(r));
        return p;
      }
      Rat s = 0;
      for (int i = 0; i < m && s == 0; ++i)
        for (int j = 0; j < m; ++j)
          if (b.at(i, j) != 0) { s = abs(b.at(i, j)); break; }
      p.scale = s;
      Mat bn = b.scaled(1 / s);
      Vec r = reduce_mod_rows(v, rref(b));
      // The residual scale c with c^2 = 1/s acts by v -> v/c; the rational
      // complete invariant is s * r r^T (v determined up to that scale and
      // sign by its square).
      Mat vsq(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) vsq.at(i, j) = s * r[i] * r[j];
      p.parts.emplace_back("b", bn);
      p.parts.emplace_back("v-square", vsq);
      return p;
    }
    case FamilyRow::L3K3:
      p.parts.emplace_back("gram", w * w.transpose());
      return p;
    default:
      throw input_error("no orbit payload for this row");
  }
}

struct AffineSolve {
  Mat x0;                       // particular solution of A X = B
  std::vector<Mat> kernel;      // basis of homogeneous solutions
};

std::optional<AffineSolve> solve_affine(const Mat& a, const Mat& b, int l) {
  AffineSolve out;
  out.x0 = Mat(l, l);
  if (a.rows() == 0) {
    out.x0 = Mat::identity(l);
    return out;  // no constraints beyond squareness; kernel omitted (X free around identity)
  }
  std::vector<Vec> ker = nullspace(a);
  for (int j = 0; j < l; ++j) {
    auto s = solve(a, b.col(j));
    if (!s) return std::nullopt;
    for (int i = 0; i < l; ++i) out.x0.at(i, j) = s->particular[i];
  }
  for (const Vec& v : ker)
    for (int j = 0; j < l; ++j) {
      Mat n(l, l);
      for (int i = 0; i < l; ++i) n.at(i, j) = v[i];
      out.kernel.push_back(n);
    }
  return out;
}

const std::vector<Rat>& grid_values() {
  static const std::vector<Rat> v = {Rat(0), Rat(1), Rat(-1), Rat(2), Rat(-2), Rat(1, 2), Rat(3)};
  return v;
}

std::optional<Mat> make_invertible(const AffineSolve& s) {
  if (det(s.x0) != 0) return s.x0;
  int d = int(s.kernel.size());
  if (d == 0) return std::nullopt;
  if (d <= 3) {
    std::vector<size_t> idx(d, 0);
    const auto& g = grid_values();
    for (;;) {
      Mat x = s.x0;
      for (int i = 0; i < d; ++i)
        if (idx[i] > 0) x = x + s.kernel[i].scaled(g[idx[i]]);
      if (det(x) != 0) return x;
      int i = 0;
      while (i < d && ++idx[i] == g.size()) idx[i++] = 0;
      if (i == d) return std::nullopt;
    }
  }
  // Larger kernels: the singular locus is a hypersurface, so seeded random
  // corrections find an invertible point quickly whenever one exists.
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<int> num(-2, 2), den(1, 2);
  for (int attempt = 0; attempt < 400; ++attempt) {
    Mat x = s.x0;
    for (const Mat& n : s.kernel) x = x + n.scaled(rat_of(num(rng), den(rng)));
    if (det(x) != 0) return x;
  }
  return std::nullopt;
}

/// Adjusts det(X) to the target by a rank-one shift inside ker(A), keeping
/// A X = B.
std::optional<Mat> fix_det(const Mat& a, const Mat& x, const Rat& target) {
  Rat d = det(x);
  if (d == target) return x;
  if (d == 0) return std::nullopt;
  std::vector<Vec> ker = a.rows() == 0 ? std::vector<Vec>{} : nullspace(a);
  if (a.rows() == 0)
    for (int i = 0; i < x.rows(); ++i) ker.push_back(unit(x.rows(), i));
  auto xinv = inverse(x);
  for (const Vec& v : ker) {
    Vec y = *xinv * v;
    Rat yy = dot(y, y);
    if (yy == 0) continue;
    Rat c = (target / d - 1) / yy;
    Mat delta(x.rows(), x.cols());
    for (int i = 0; i < x.rows(); ++i)
      for (int j = 0; j < x.cols(); ++j) delta.at(i, j) = v[i] * c * y[j];
    Mat xr = x + delta;
    if (det(xr) == target) return xr;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Mat> extend_isometry(int dim, const std::vector<Vec>& from,
                                   const std::vector<Vec>& to) {
  if (from.size() != to.size()) return std::nullopt;
  for (size_t i = 0; i < from.size(); ++i)
    for (size_t j = 0; j < from.size(); ++j)
      if (dot(from[i], from[j]) != dot(to[i], to[j])) return std::nullopt;
  Mat o = Mat::identity(dim);
  for (size_t i = 0; i < from.size(); ++i) {
    Vec u = o * from[i];
    const Vec& v = to[i];
    if (u == v) continue;
    Vec n = vec_sub(u, v);
    Rat nn = dot(n, n);
    if (nn == 0) return std::nullopt;  // impossible for a definite form
    Mat h = Mat::identity(dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) h.at(r, c) -= 2 * n[r] * n[c] / nn;
    o = h * o;
  }
  for (size_t i = 0; i < from.size(); ++i)
    if (!(o * from[i] == to[i])) return std::nullopt;
  return o;
}

FamilySpec make_family_spec(FamilyRow row, const WeightMatrix& lambda) {
  FamilySpec spec;
  spec.row = row;
  spec.l = family_row_l(row);
  spec.k = family_row_k(row);
  if (lambda.l != spec.l) throw input_error("lambda has the wrong number of columns for the row");
  if (lambda.entries.rows() != lambda.m || lambda.entries.cols() != lambda.l)
    throw input_error("lambda shape fields inconsistent");
  spec.m = lambda.m;
  spec.lambda = lambda;
  spec.admissible = lambda_admissible(row, lambda);
  if (!spec.admissible)
    spec.warning = "weights not admissible for row " + family_row_name(row) +
                   "; the built algebra is decomposable or degenerate";
  return spec;
}

TwofoldData build_family(const FamilySpec& spec) {
  int m = spec.m;
  Rep rep;
  if (spec.row == FamilyRow::DA) {
    // One-dimensional l acting on an indefinite plane (hyperbolic-type block)
    // plus m rotation planes.
    int a = 2 + 2 * m;
    rep.l = 1;
    rep.a = a;
    Vec diag(a, Rat(1));
    diag[0] = -1;
    rep.gramA = Mat::diag(diag);
    Mat r0(a, a);
    r0.at(0, 1) = 1;
    r0.at(1, 0) = 1;
    for (int i = 0; i < m; ++i) {
      Rat li = spec.lambda.entries.at(i, 0);
      r0.at(2 + 2 * i, 3 + 2 * i) = -li;
      r0.at(3 + 2 * i, 2 + 2 * i) = li;
    }
    rep.rho = {r0};
    return TwofoldData{rep, Cochain::zero(2, 1, a), ScalarForm::zero(3, 1)};
  }

  int l = spec.l, k = spec.k;
  int a = 2 * m + k;
  rep.l = l;
  rep.a = a;
  rep.gramA = Mat::identity(a);
  for (int j = 0; j < l; ++j) {
    Mat r(a, a);
    for (int i = 0; i < m; ++i) {
      Rat lij = spec.lambda.entries.at(i, j);
      r.at(m + i, i) = lij;   // X_i -> lambda^i(L_j) Y_i
      r.at(i, m + i) = -lij;  // Y_i -> -lambda^i(L_j) X_i
    }
    rep.rho.push_back(r);
  }

  Cochain alpha = Cochain::zero(2, l, a);
  ScalarForm gamma = ScalarForm::zero(3, l);
  switch (spec.row) {
    case FamilyRow::OscL1:
    case FamilyRow::L2K0:
    case FamilyRow::L3K0G0:
      break;
    case FamilyRow::L3K0G1:
      gamma.set({0, 1, 2}, Rat(1));
      break;
    case FamilyRow::L2K1:
    case FamilyRow::L3K1:
      alpha.set({0, 1}, unit(a, 2 * m));
      break;
    case FamilyRow::L3K2:
      alpha.set({0, 1}, unit(a, 2 * m));
      alpha.set({0, 2}, unit(a, 2 * m + 1));
      break;
    case FamilyRow::L3K3:
      alpha.set({0, 1}, unit(a, 2 * m));
      alpha.set({0, 2}, unit(a, 2 * m + 1));
      alpha.set({1, 2}, unit(a, 2 * m + 2));
      break;
    case FamilyRow::DA:
      break;
  }
  return TwofoldData{rep, alpha, gamma};
}

SignedPerm SignedPerm::identity(int m) {
  SignedPerm g;
  g.perm.resize(m);
  std::iota(g.perm.begin(), g.perm.end(), 0);
  g.sign.assign(m, 1);
  return g;
}

SignedPerm SignedPerm::inverse() const {
  SignedPerm r;
  int m = int(perm.size());
  r.perm.resize(m);
  r.sign.resize(m);
  for (int j = 0; j < m; ++j) {
    r.perm[perm[j]] = j;
    r.sign[perm[j]] = sign[j];
  }
  return r;
}

SignedPerm SignedPerm::compose(const SignedPerm& b) const {
  SignedPerm r;
  int m = int(perm.size());
  r.perm.resize(m);
  r.sign.resize(m);
  for (int j = 0; j < m; ++j) {
    r.perm[j] = perm[b.perm[j]];
    r.sign[j] = sign[b.perm[j]] * b.sign[j];
  }
  return r;
}

Mat SignedPerm::apply_rows(const Mat& w) const {
  Mat out(w.rows(), w.cols());
  for (int j = 0; j < w.rows(); ++j)
    for (int c = 0; c < w.cols(); ++c) out.at(perm[j], c) = Rat(sign[j]) * w.at(j, c);
  return out;
}

WeightMatrix transform_lambda(const WeightMatrix& lambda, const SignedPerm& q, const Mat& smat) {
  auto sinv = inverse(smat);
  if (!sinv) throw input_error("singular transformation of weights");
  return WeightMatrix::from(q.apply_rows(lambda.entries) * *sinv);
}

std::string invariant_tag_name(InvariantValue::Tag tag) {
  switch (tag) {
    case InvariantValue::Tag::Lorentz: return "lorentz";
    case InvariantValue::Tag::Grassmannian: return "grassmannian";
    case InvariantValue::Tag::EOmega: return "span-wedge";
    case InvariantValue::Tag::EFOmega: return "span-line-wedge";
    case InvariantValue::Tag::BVModScale: return "pairing-coset-mod-scale";
    case InvariantValue::Tag::Gram: return "gram";
  }
  return "?";
}

static InvariantValue::Tag tag_for(FamilyRow row) {
  switch (row) {
    case FamilyRow::OscL1: case FamilyRow::DA: return InvariantValue::Tag::Lorentz;
    case FamilyRow::L2K0: case FamilyRow::L3K0G0: return InvariantValue::Tag::Grassmannian;
    case FamilyRow::L2K1: return InvariantValue::Tag::EOmega;
    case FamilyRow::L3K0G1: return InvariantValue::Tag::EOmega;
    case FamilyRow::L3K1: return InvariantValue::Tag::EFOmega;
    case FamilyRow::L3K2: return InvariantValue::Tag::BVModScale;
    case FamilyRow::L3K3: return InvariantValue::Tag::Gram;
  }
  return InvariantValue::Tag::Gram;
}

InvariantValue invariant(const FamilySpec& spec, int orbit_bound) {
  InvariantValue out;
  out.tag = tag_for(spec.row);
  int m = spec.m;
  out.cert = SignedPerm::identity(m);

  if (spec.row == FamilyRow::OscL1 || spec.row == FamilyRow::DA) {
    // Sort absolute weights; the oscillator additionally scales the least
    // to one (the one-dimensional general linear action), dA must not scale.
    std::vector<std::pair<Rat, int>> vals;
    for (int j = 0; j < m; ++j) vals.emplace_back(abs(spec.lambda.entries.at(j, 0)), j);
    std::stable_sort(vals.begin(), vals.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    Rat scale = 1;
    if (spec.row == FamilyRow::OscL1 && m > 0 && vals.front().first != 0)
      scale = vals.front().first;
    Mat row(1, m);
    SignedPerm cert = SignedPerm::identity(m);
    for (int pos = 0; pos < m; ++pos) {
      row.at(0, pos) = vals[pos].first / scale;
      cert.perm[vals[pos].second] = pos;
      cert.sign[vals[pos].second] = spec.lambda.entries.at(vals[pos].second, 0) < 0 ? -1 : 1;
    }
    out.parts.emplace_back("weights", row);
    out.canonical = serialize_parts(out.parts);
    out.cert = cert;
    out.cert_scale = scale;
    return out;
  }

  if (m > orbit_bound)
    throw orbit_bound_error("orbit search exceeded: m = " + std::to_string(m) +
                            " > bound " + std::to_string(orbit_bound));

  bool have = false;
  std::vector<int> base(m);
  std::iota(base.begin(), base.end(), 0);
  std::vector<int> perm = base;
  do {
    for (unsigned smask = 0; smask < (1u << m); ++smask) {
      SignedPerm g;
      g.perm = perm;
      g.sign.resize(m);
      for (int j = 0; j < m; ++j) g.sign[j] = (smask & (1u << j)) ? -1 : 1;
      Payload p = payload_for(spec.row, g.apply_rows(spec.lambda.entries));
      if (!have || cmp_parts(p.parts, out.parts) < 0) {
        have = true;
        out.parts = std::move(p.parts);
        out.cert = g;
        out.cert_scale = p.scale;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  out.canonical = serialize_parts(out.parts);
  return out;
}

bool orbits_equal(const InvariantValue& v1, const InvariantValue& v2) {
  return v1.tag == v2.tag && v1.canonical == v2.canonical;
}

namespace {

/// Solves lt1 * X = lt2 for X in the row's structure group; lt are the
/// certificate-transformed weight matrices.
std::optional<Mat> solve_structure_x(FamilyRow row, const Mat& lt1, const Mat& lt2,
                                     const Rat& s1, const Rat& s2) {
  int l = lt1.cols();
  switch (row) {
    case FamilyRow::L2K0:
    case FamilyRow::L3K0G0: {
      auto aff = solve_affine(lt1, lt2, l);
      if (!aff) return std::nullopt;
      return make_invertible(*aff);
    }
    case FamilyRow::L3K0G1: {
      auto aff = solve_affine(lt1, lt2, l);
      if (!aff) return std::nullopt;
      auto x = make_invertible(*aff);
      if (!x) return std::nullopt;
      return fix_det(lt1, *x, Rat(1));
    }
    case FamilyRow::L2K1: {
      auto aff = solve_affine(lt1, lt2, l);
      if (!aff) return std::nullopt;
      auto x = make_invertible(*aff);
      if (!x) return std::nullopt;
      Rat d = det(*x);
      if (d == 1 || d == -1) return x;
      auto x1 = fix_det(lt1, *x, Rat(1));
      if (x1) return x1;
      return fix_det(lt1, *x, Rat(-1));
    }
    case FamilyRow::L3K1: {
      // X preserves the line of L_3 (third column (0, 0, x22)), and the
      // projected 2x2 block has determinant +-1. The first two columns are
      // independent affine solves; corrections move along ker(lt1), and the
      // determinant condition is linear in the two correction parameters
      // when both use the same kernel direction.
      int m = lt1.rows();
      if (m == 0) return Mat::identity(3);
      auto c0 = solve(lt1, lt2.col(0));
      auto c1 = solve(lt1, lt2.col(1));
      if (!c0 || !c1) return std::nullopt;
      Rat x22 = 0;
      bool col2_zero = true;
      for (int r = 0; r < m; ++r)
        if (lt1.at(r, 2) != 0) {
          col2_zero = false;
          x22 = lt2.at(r, 2) / lt1.at(r, 2);
          break;
        }
      if (col2_zero) {
        for (int r = 0; r < m; ++r)
          if (lt2.at(r, 2) != 0) return std::nullopt;
        x22 = 1;
      } else {
        for (int r = 0; r < m; ++r)
          if (lt2.at(r, 2) != x22 * lt1.at(r, 2)) return std::nullopt;
      }
      if (x22 == 0) return std::nullopt;

      auto assemble = [&](const Vec& a, const Vec& b) {
        Mat x(3, 3);
        for (int i = 0; i < 3; ++i) {
          x.at(i, 0) = a[i];
          x.at(i, 1) = b[i];
        }
        x.at(2, 2) = x22;
        return x;
      };
      auto accept = [&](const Mat& x) -> std::optional<Mat> {
        Rat d2 = x.at(0, 0) * x.at(1, 1) - x.at(0, 1) * x.at(1, 0);
        if ((d2 == 1 || d2 == -1) && det(x) != 0 && lt1 * x == lt2) return x;
        return std::nullopt;
      };
      if (auto x = accept(assemble(c0->particular, c1->particular))) return x;
      for (const Vec& kv : c0->kernel) {
        // det2(s, t) = A + B s + C t with both corrections along kv.
        Rat A = c0->particular[0] * c1->particular[1] - c0->particular[1] * c1->particular[0];
        Rat B = kv[0] * c1->particular[1] - kv[1] * c1->particular[0];
        Rat C = c0->particular[0] * kv[1] - c0->particular[1] * kv[0];
        for (Rat target : {Rat(1), Rat(-1)}) {
          std::optional<std::pair<Rat, Rat>> st;
          if (B != 0)
            st = std::make_pair((target - A) / B, Rat(0));
          else if (C != 0)
            st = std::make_pair(Rat(0), (target - A) / C);
          else if (A == target)
            st = std::make_pair(Rat(0), Rat(0));
          if (!st) continue;
          Vec a = vec_add(c0->particular, vec_scaled(kv, st->first));
          Vec b = vec_add(c1->particular, vec_scaled(kv, st->second));
          if (auto x = accept(assemble(a, b))) return x;
        }
      }
      return std::nullopt;
    }
    case FamilyRow::L3K2: {
      int m = lt1.rows();
      Mat p1(m, 2), p2(m, 2);
      for (int i = 0; i < m; ++i) {
        p1.at(i, 0) = lt1.at(i, 1); p1.at(i, 1) = lt1.at(i, 2);
        p2.at(i, 0) = lt2.at(i, 1); p2.at(i, 1) = lt2.at(i, 2);
      }
      Rat c;
      std::vector<Mat> rcands;
      if (p1.is_zero() && p2.is_zero()) {
        c = 1;
        rcands.push_back(Mat::identity(2));
      } else {
        Rat c2 = s2 / s1;
        if (!is_rational_square(c2, c)) return std::nullopt;  // irrational scale
        std::vector<Vec> from, to;
        for (int i = 0; i < m; ++i) {
          from.push_back(vec_scaled(p1.row(i), c));
          to.push_back(p2.row(i));
        }
        auto o = extend_isometry(2, from, to);
        if (!o) return std::nullopt;
        rcands.push_back(o->transpose());
        // Row space may be one-dimensional; a reflection across it is the
        // other coset of solutions.
        if (rank(p1) < 2) {
          auto ker = nullspace(p1);
          if (!ker.empty()) {
            Vec n = ker.front();
            // reflection fixing the image rows: subtract along the normal of
            // the image row space on the right.
            Mat refl = Mat::identity(2);
            Vec img_norm = nullspace(p2)[0];
            Rat nn = dot(img_norm, img_norm);
            for (int r = 0; r < 2; ++r)
              for (int cc = 0; cc < 2; ++cc)
                refl.at(r, cc) -= 2 * img_norm[r] * img_norm[cc] / nn;
            rcands.push_back(rcands.front() * refl);
          }
        }
      }
      for (const Mat& r : rcands) {
        Mat cr = r.scaled(c);
        for (int sgn : {1, -1}) {
          Rat aval = Rat(sgn) / c;
          // first column (a, u2, u3): lt2.col0 = a lt1.col0 + u2 lt1.col1 + u3 lt1.col2
          Mat sys(m, 2);
          Vec rhs(m);
          for (int i = 0; i < m; ++i) {
            sys.at(i, 0) = lt1.at(i, 1);
            sys.at(i, 1) = lt1.at(i, 2);
            rhs[i] = lt2.at(i, 0) - aval * lt1.at(i, 0);
          }
          auto us = m == 0 ? std::optional<SolveResult>{SolveResult{Vec{0, 0}, {}}}
                           : solve(sys, rhs);
          if (!us) continue;
          Mat x(3, 3);
          x.at(0, 0) = aval;
          x.at(1, 0) = us->particular[0];
          x.at(2, 0) = us->particular[1];
          x.at(1, 1) = cr.at(0, 0); x.at(1, 2) = cr.at(0, 1);
          x.at(2, 1) = cr.at(1, 0); x.at(2, 2) = cr.at(1, 1);
          if (lt1 * x == lt2 && det(x) != 0) return x;
        }
      }
      return std::nullopt;
    }
    case FamilyRow::L3K3: {
      int m = lt1.rows();
      std::vector<Vec> from, to;
      for (int i = 0; i < m; ++i) {
        from.push_back(lt1.row(i));
        to.push_back(lt2.row(i));
      }
      auto o = extend_isometry(3, from, to);
      if (!o) return std::nullopt;
      return o->transpose();
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

IsoResult isomorphic_family(const FamilySpec& s1, const FamilySpec& s2, int orbit_bound) {
  IsoResult out;
  if (s1.row != s2.row || s1.m != s2.m || s1.k != s2.k || s1.l != s2.l) {
    out.note = "different family parameters";
    return out;
  }
  InvariantValue i1 = invariant(s1, orbit_bound);
  InvariantValue i2 = invariant(s2, orbit_bound);
  if (!orbits_equal(i1, i2)) {
    out.note = "canonical invariants differ";
    return out;
  }
  out.isomorphic = true;

  int m = s1.m, l = s1.l, k = s1.k;
  TwofoldData d1 = build_family(s1), d2 = build_family(s2);

  SignedPerm q = SignedPerm::identity(m);
  std::optional<Mat> x;

  if (s1.row == FamilyRow::OscL1 || s1.row == FamilyRow::DA) {
    // Match the weight multisets directly.
    Rat c = s1.row == FamilyRow::OscL1 ? i2.cert_scale / i1.cert_scale : Rat(1);
    std::vector<bool> used(m, false);
    for (int j = 0; j < m; ++j) {
      Rat want = abs(s1.lambda.entries.at(j, 0)) * c;
      int hit = -1;
      for (int i = 0; i < m && hit < 0; ++i)
        if (!used[i] && abs(s2.lambda.entries.at(i, 0)) == want) hit = i;
      if (hit < 0) {
        out.note = "weight matching failed";
        return out;
      }
      used[hit] = true;
      q.perm[j] = hit;
      Rat l1v = s1.lambda.entries.at(j, 0) * c;
      Rat l2v = s2.lambda.entries.at(hit, 0);
      q.sign[j] = (l1v == l2v) ? 1 : -1;
    }
    Mat xm(1, 1);
    xm.at(0, 0) = c;
    if (!(q.apply_rows(s1.lambda.entries) * xm == s2.lambda.entries)) {
      out.note = "weight matching failed";
      return out;
    }
    x = xm;
    if (s1.row == FamilyRow::DA) {
      out.note = "witness emission not implemented for the indefinite-plane family";
      out.witness.reset();
      return out;
    }
  } else {
    Mat lt1 = i1.cert.apply_rows(s1.lambda.entries);
    Mat lt2 = i2.cert.apply_rows(s2.lambda.entries);
    x = solve_structure_x(s1.row, lt1, lt2, i1.cert_scale, i2.cert_scale);
    if (!x) {
      out.note = "no rational structure-group element links the weights";
      return out;
    }
    q = i2.cert.inverse().compose(i1.cert);
  }

  // lambda2 = q lambda1 X must hold exactly.
  if (!(q.apply_rows(s1.lambda.entries) * *x == s2.lambda.entries)) {
    out.note = "certificate composition failed";
    return out;
  }
  auto sinv = inverse(*x);
  if (!sinv) {
    out.note = "structure solution singular";
    return out;
  }
  Mat S = *sinv;

  // U: plane permutation with orientation flips, plus an orthogonal part on
  // the fixed subspace solved from the alpha values.
  int a = 2 * m + k;
  Mat U(a, a);
  for (int j = 0; j < m; ++j) {
    U.at(q.perm[j], j) = 1;
    U.at(m + q.perm[j], m + j) = q.sign[j];
  }
  if (k > 0) {
    std::vector<Vec> from, to;
    Cochain pulled = [&] {
      Cochain p = Cochain::zero(2, l, a);
      for (const auto& t : increasing_tuples(l, 2)) {
        Vec total(a, Rat(0));
        for (const auto& s : increasing_tuples(l, 2)) {
          Rat coeff =
              S.at(s[0], t[0]) * S.at(s[1], t[1]) - S.at(s[1], t[0]) * S.at(s[0], t[1]);
          if (coeff != 0) total = vec_add(total, vec_scaled(d2.alpha.value(s), coeff));
        }
        p.set(t, total);
      }
      return p;
    }();
    for (const auto& t : increasing_tuples(l, 2)) {
      Vec f(k), g(k);
      for (int r = 0; r < k; ++r) {
        f[r] = d1.alpha.value(t)[2 * m + r];
        g[r] = pulled.value(t)[2 * m + r];
      }
      from.push_back(f);
      to.push_back(g);
    }
    auto uk = extend_isometry(k, from, to);
    if (!uk) {
      out.note = "no rational orthogonal map matches the alpha values";
      return out;
    }
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) U.at(2 * m + r, 2 * m + c) = uk->at(r, c);
  }

  TwofoldData pullback = transport(d2, S, U);
  if (!(pullback.rep == d1.rep)) {
    out.note = "transported representation mismatch";
    return out;
  }
  auto tau = extension_equivalent(d1, pullback);
  if (!tau) {
    out.note = "no equivalence cochain for the transported data";
    return out;
  }
  WitnessCheck wc = witness_isomorphism(d1, d2, S, U, *tau);
  if (!wc.ok) {
    out.note = "witness verification failed: " + wc.failed;
    return out;
  }
  out.witness = IsoWitness{S, U, *tau};
  return out;
}

Index2Result classify_index2(const FamilySpec& spec, int orbit_bound) {
  Index2Result out;
  switch (spec.row) {
    case FamilyRow::DA: {
      out.case_id = 1;
      Vec vals;
      for (int j = 0; j < spec.m; ++j) {
        Rat v = abs(spec.lambda.entries.at(j, 0));
        if (v == 0) {
          out.failure = "zero rotation parameter: the action has a kernel, decomposable input";
          return out;
        }
        vals.push_back(v);
      }
      std::sort(vals.begin(), vals.end());
      out.lambda_sorted = vals;
      return out;
    }
    case FamilyRow::L2K0: {
      out.case_id = 2;
      if (spec.m < 3) {
        out.failure = "fewer than three weight planes: decomposable input";
        return out;
      }
      if (spec.lambda.has_zero_row()) {
        out.failure = "zero weight: decomposable input";
        return out;
      }
      if (!spec.admissible) {
        out.failure = "weights lie in a union of two lines: decomposable input";
        return out;
      }
      out.inv = invariant(spec, orbit_bound);
      return out;
    }
    case FamilyRow::L2K1: {
      out.case_id = 3;
      if (spec.lambda.has_zero_row()) {
        out.failure = "zero weight: decomposable input";
        return out;
      }
      out.inv = invariant(spec, orbit_bound);
      return out;
    }
    default:
      throw input_error("not an index-2 family row: " + family_row_name(spec.row));
  }
}

std::string stabilizer_description(FamilyRow row) {
  switch (row) {
    case FamilyRow::OscL1:
      return "nonzero scalars";
    case FamilyRow::L2K0:
      return "all invertible 2x2 matrices";
    case FamilyRow::L3K0G0:
      return "all invertible 3x3 matrices";
    case FamilyRow::L2K1:
      return "invertible 2x2 matrices of determinant +-1";
    case FamilyRow::L3K0G1:
      return "invertible 3x3 matrices of determinant 1";
    case FamilyRow::L3K1:
      return "block matrices preserving the last coordinate line whose "
             "projected 2x2 block has determinant +-1";
    case FamilyRow::L3K2:
      return "matrices preserving span{L2, L3}, acting there by c times a "
             "rotation or reflection with c = |det|";
    case FamilyRow::L3K3:
      return "orthogonal 3x3 matrices";
    case FamilyRow::DA:
      return "trivial (normal forms are rigid)";
  }
  return "?";
}

namespace {

Rat rand_rat(std::mt19937_64& rng, int num_range = 3, int max_den = 3) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, max_den);
  return rat_of(num(rng), den(rng));
}

Mat cayley_orthogonal(int n, std::mt19937_64& rng) {
  // (I - A)(I + A)^-1 for antisymmetric A is orthogonal with determinant 1.
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rat v = rand_rat(rng);
      a.at(i, j) = v;
      a.at(j, i) = -v;
    }
  Mat i = Mat::identity(n);
  auto inv = inverse(i + a);
  return (i - a) * *inv;
}

}  // namespace

Mat sample_stabilizer(FamilyRow row, std::mt19937_64& rng) {
  auto random_invertible = [&](int n) {
    for (;;) {
      Mat m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = rand_rat(rng);
      if (det(m) != 0) return m;
    }
  };
  std::uniform_int_distribution<int> coin(0, 1);
  switch (row) {
    case FamilyRow::OscL1: {
      Mat s(1, 1);
      Rat c = 0;
      while (c == 0) c = rand_rat(rng);
      s.at(0, 0) = c;
      return s;
    }
    case FamilyRow::L2K0:
      return random_invertible(2);
    case FamilyRow::L3K0G0:
      return random_invertible(3);
    case FamilyRow::L3K0G1: {
      Mat s = random_invertible(3);
      Rat d = det(s);
      for (int j = 0; j < 3; ++j) s.at(j, 0) /= d;  // scale one column
      return s;
    }
    case FamilyRow::L2K1: {
      Mat s = random_invertible(2);
      Rat d = coin(rng) ? det(s) : -det(s);
      for (int j = 0; j < 2; ++j) s.at(j, 0) /= d;
      return s;
    }
    case FamilyRow::L3K1: {
      Mat p = random_invertible(2);
      Rat d = coin(rng) ? det(p) : -det(p);
      for (int j = 0; j < 2; ++j) p.at(j, 0) /= d;
      Mat s(3, 3);
      s.at(0, 0) = p.at(0, 0); s.at(0, 1) = p.at(0, 1);
      s.at(1, 0) = p.at(1, 0); s.at(1, 1) = p.at(1, 1);
      s.at(2, 0) = rand_rat(rng);
      s.at(2, 1) = rand_rat(rng);
      Rat g = 0;
      while (g == 0) g = rand_rat(rng);
      s.at(2, 2) = g;
      return s;
    }
    case FamilyRow::L3K2: {
      Rat c = 0;
      while (c <= 0) c = abs(rand_rat(rng));
      Mat r = cayley_orthogonal(2, rng);
      if (coin(rng)) {  // allow a reflection
        Mat f = Mat::identity(2);
        f.at(1, 1) = -1;
        r = r * f;
      }
      Mat s(3, 3);
      s.at(0, 0) = Rat(coin(rng) ? 1 : -1) / c;
      s.at(1, 0) = rand_rat(rng);
      s.at(2, 0) = rand_rat(rng);
      s.at(1, 1) = c * r.at(0, 0); s.at(1, 2) = c * r.at(0, 1);
      s.at(2, 1) = c * r.at(1, 0); s.at(2, 2) = c * r.at(1, 1);
      return s;
    }
    case FamilyRow::L3K3: {
      Mat r = cayley_orthogonal(3, rng);
      if (coin(rng)) {
        Mat f = Mat::identity(3);
        f.at(0, 0) = -1;
        r = r * f;
      }
      return r;
    }
    case FamilyRow::DA:
      return Mat::identity(1);
  }
  return Mat::identity(family_row_l(row));
}

}  // namespace metlie
