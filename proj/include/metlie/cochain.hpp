#pragma once

#include <map>

#include "metlie/subspace.hpp"

namespace metlie {

/// Orthogonal representation of the abelian algebra l on (a, gramA): one
/// matrix per l-basis vector, each antisymmetric w.r.t. gramA, pairwise
/// commuting.
struct Rep {
  int l = 0;
  int a = 0;
  Mat gramA;
  std::vector<Mat> rho;

  /// Throws input_error on any violated structural invariant.
  void validate() const;
  bool operator==(const Rep&) const = default;
};

/// Alternating p-linear map l^p -> a, stored by values on strictly
/// increasing index tuples. Missing tuples are zero.
struct Cochain {
  int deg = 0;
  int l = 0;
  int a = 0;
  std::map<std::vector<int>, Vec> vals;

  static Cochain zero(int deg, int l, int a) { return Cochain{deg, l, a, {}}; }

  void set(std::vector<int> idx, Vec v);
  /// Value on a strictly increasing tuple.
  Vec value(const std::vector<int>& idx) const;
  /// Value on an arbitrary tuple (signed, zero on repeats).
  Vec eval(std::vector<int> idx) const;
  bool is_zero() const;

  Cochain operator+(const Cochain& o) const;
  Cochain operator-(const Cochain& o) const;
  Cochain scaled(const Rat& c) const;
  bool operator==(const Cochain& o) const;
};

/// Alternating p-form with scalar values; gamma lives here (p = 3).
struct ScalarForm {
  int deg = 0;
  int l = 0;
  std::map<std::vector<int>, Rat> vals;

  static ScalarForm zero(int deg, int l) { return ScalarForm{deg, l, {}}; }

  void set(std::vector<int> idx, Rat v);
  Rat value(const std::vector<int>& idx) const;
  Rat eval(std::vector<int> idx) const;
  bool is_zero() const;

  ScalarForm operator+(const ScalarForm& o) const;
  ScalarForm operator-(const ScalarForm& o) const;
  ScalarForm scaled(const Rat& c) const;
  bool operator==(const ScalarForm& o) const;
};

/// All strictly increasing k-tuples in {0,..,l-1}, lexicographic order.
std::vector<std::vector<int>> increasing_tuples(int l, int k);

/// d tau(L_1,..,L_{p+1}) = sum_i (-1)^{i-1} rho(L_i) tau(..,hat L_i,..).
/// Throws input_error at top degree (p = l).
Cochain differential(const Rep& rep, const Cochain& c);

/// Same formula, but degrees beyond the top return the zero cochain. Used
/// where the complex is extended by zero modules.
Cochain differential_or_zero(const Rep& rep, const Cochain& c);

/// <x wedge y>_a: wedge of vector-valued forms followed by the inner
/// product of a; shuffle sum normalization matching the displayed
/// three-term (2,1) formula. Throws on p+q > l.
ScalarForm wedge_inner(const Rep& rep, const Cochain& x, const Cochain& y);
ScalarForm wedge_inner_or_zero(const Rep& rep, const Cochain& x, const Cochain& y);

bool check_cocycle(const Rep& rep, const Cochain& alpha);

/// The quadratic constraint on a degree-2 cochain: for every increasing
/// 4-tuple, <a(12),a(34)> + <a(23),a(14)> + <a(31),a(24)> = 0. Vacuous for
/// l <= 3.
bool check_EK(const Rep& rep, const Cochain& alpha);

/// Whether (1/2)<alpha wedge alpha> vanishes; agrees with check_EK on all
/// inputs (the cup square computes twice the same sum).
bool cup_selfcheck(const Rep& rep, const Cochain& alpha);

/// Right action of C^1(l,a): (alpha,gamma)tau =
/// (alpha + d tau, gamma + <(alpha + 1/2 d tau) wedge tau>).
std::pair<Cochain, ScalarForm> act(const Rep& rep, const Cochain& alpha,
                                   const ScalarForm& gamma, const Cochain& tau);

struct NilSplit {
  Subspace invariants;  // a^l, the joint kernel of rho
  Subspace moving;      // its orthogonal complement
};

/// Euclidean case only: a^l is the joint kernel and the complement is
/// rho-invariant. Indefinite gramA raises unsupported_case.
NilSplit nil_split(const Rep& rep);

/// Canonical representative of gamma modulo <alpha wedge C^1(l, a^l)>,
/// reduced against the rref of that subspace in lexicographic 3-form
/// coordinates. Requires alpha valued in a^l.
ScalarForm gamma_orbit_reduce(const Rep& rep, const Cochain& alpha, const ScalarForm& gamma);

}  // namespace metlie
