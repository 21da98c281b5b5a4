#pragma once

#include "metlie/cochain.hpp"
#include "metlie/lie_algebra.hpp"

namespace metlie {

/// The data (rho, alpha, gamma) of a twofold extension: alpha must be a
/// cocycle whose cup square vanishes.
struct TwofoldData {
  Rep rep;
  Cochain alpha;   // degree 2, values in a
  ScalarForm gamma;  // degree 3, scalar

  /// Validates rep invariants, shapes, the cocycle condition and the
  /// four-index quadratic condition on alpha.
  void validate() const;
  bool operator==(const TwofoldData&) const = default;
};

/// Basis order of the built algebra: Z_1..Z_l, A_1..A_a, L_1..L_l, with the
/// hyperbolic pairing <Z_i, L_j> = delta_ij and the gramA block on A.
MetricLieAlgebra build(const TwofoldData& data);

inline int z_index(const TwofoldData& d, int i) { return i; }
inline int a_index(const TwofoldData& d, int b) { return d.rep.l + b; }
inline int l_index(const TwofoldData& d, int j) { return d.rep.l + d.rep.a + j; }

struct RegularityReport {
  bool regular = false;
  /// Basis of the solution space of the singular system, as vectors
  /// (L_0, A_0) in Q^{l+a}.
  std::vector<Vec> witnesses;
};

/// Assembles the singular linear system (rho(L0) = 0, rho(.)A0 = alpha(L0,.),
/// gamma(L0,.,.) = <A0, alpha(.,.)>) in the unknowns (L0, A0); the data is
/// regular iff the solution space is trivial.
RegularityReport regularity(const TwofoldData& data);

struct Extraction {
  TwofoldData data;
  /// Columns are the images of the (Z, A, L) basis of build(data) in the
  /// coordinates of the input algebra; an isometric Lie isomorphism.
  Mat iso;
};

struct extract_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Recovers twofold data from a concrete algebra with l = dim centre,
/// a = centre^perp / centre. Preconditions (verified axioms, non-abelian,
/// isotropic centre, abelian derived-mod-centre) are reported by name via
/// extract_error. The returned pair (alpha, gamma) depends on the chosen
/// sections and is well defined up to the C^1-action.
Extraction extract(const MetricLieAlgebra& g);

/// Two-stage exact solve for tau with alpha2 - alpha1 = d tau and
/// gamma2 - gamma1 = <(alpha1 + 1/2 d tau) wedge tau>. Returns the witness
/// cochain or nullopt; both data must share the same rep.
std::optional<Cochain> extension_equivalent(const TwofoldData& d1, const TwofoldData& d2);

/// The triangular isometry associated to tau in (Z, A, L) block order:
/// [[Id, tau*, -1/2 tau* tau], [0, Id, -tau], [0, 0, Id]].
Mat psi_matrix(const Rep& rep, const Cochain& tau);

struct WitnessCheck {
  bool ok = false;
  std::string failed;        // name of the first failed equation, if any
  std::optional<Mat> iso;    // verified isomorphism build(d1) -> build(d2)
};

/// Verifies the conjugation equation on rho, the alpha equation and the
/// gamma equation for (S, U, tau) exactly; on success composes
/// (S^-*, U, S) with the triangular isometry of tau and verifies the result
/// as a metric Lie algebra isomorphism.
WitnessCheck witness_isomorphism(const TwofoldData& d1, const TwofoldData& d2, const Mat& S,
                                 const Mat& U, const Cochain& tau);

/// Pullback of d2 through (S, U): rho*(L) = U^-1 rho2(S L) U,
/// alpha* = U^-1 alpha2(S., S.), gamma* = gamma2(S., S., S.). The result has
/// the same (l, a, gramA) as d2's rep conjugated to d1's frame.
TwofoldData transport(const TwofoldData& d2, const Mat& S, const Mat& U);

}  // namespace metlie
