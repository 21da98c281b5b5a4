#pragma once

#include <random>

#include "metlie/decomp.hpp"

namespace metlie {

struct orbit_bound_error : unsupported_case {
  using unsupported_case::unsupported_case;
};

/// Parameters of a standard family member. Admissibility is checked on
/// construction and reported, never silently fixed: inadmissible weights
/// still build (decomposable objects are allowed for testing).
struct FamilySpec {
  FamilyRow row;
  int m = 0, k = 0, l = 0;
  WeightMatrix lambda;
  bool admissible = false;
  std::string warning;
};

FamilySpec make_family_spec(FamilyRow row, const WeightMatrix& lambda);

/// The twofold data of the family: block rotations with the given weights on
/// m invariant planes (basis X_1..X_m, Y_1..Y_m, then the fixed part), the
/// row's canonical alpha and gamma. The dA row instead produces the
/// one-dimensional action on an indefinite plane plus rotations.
TwofoldData build_family(const FamilySpec& spec);

/// Signed permutation of the m plane indices; sign -1 flips a plane's
/// orientation (negates its weight row).
struct SignedPerm {
  std::vector<int> perm;   // j -> perm[j]
  std::vector<int> sign;   // +1 / -1 per source index
  static SignedPerm identity(int m);
  SignedPerm inverse() const;
  /// Composition: (a.compose(b)) acts as a after b.
  SignedPerm compose(const SignedPerm& b) const;
  Mat apply_rows(const Mat& w) const;
};

/// g lambda M(S)^-1: the weight matrix of the transformed representation.
WeightMatrix transform_lambda(const WeightMatrix& lambda, const SignedPerm& q, const Mat& smat);

struct InvariantValue {
  enum class Tag { Lorentz, Grassmannian, EOmega, EFOmega, BVModScale, Gram };
  Tag tag;
  /// Canonical payload, label -> matrix; equality of serializations is orbit
  /// equality.
  std::vector<std::pair<std::string, Mat>> parts;
  std::string canonical;

  /// Certificate: the signed permutation realizing the canonical form, and
  /// the positive scale divided out of the B part (k = 2 row) or the weight
  /// normalization (oscillator).
  SignedPerm cert;
  Rat cert_scale = 1;
};

std::string invariant_tag_name(InvariantValue::Tag tag);

/// Canonicalizes the row's orbit invariant by exhaustive search over the
/// signed permutation group (throws orbit_bound_error for m > bound) with
/// the continuous scale normalized analytically.
InvariantValue invariant(const FamilySpec& spec, int orbit_bound = 8);

bool orbits_equal(const InvariantValue& v1, const InvariantValue& v2);

struct IsoWitness {
  Mat S;       // l x l
  Mat U;       // a x a
  Cochain tau;
};

struct IsoResult {
  bool isomorphic = false;
  std::optional<IsoWitness> witness;
  std::string note;
};

/// Same row, same (m,k,l) and equal canonical invariants decide isomorphism;
/// when the certificates compose to an explicit rational (S, U) a witness is
/// emitted and verified through the twofold machinery.
IsoResult isomorphic_family(const FamilySpec& s1, const FamilySpec& s2, int orbit_bound = 8);

struct Index2Result {
  int case_id = 0;          // 1, 2 or 3
  std::string failure;      // nonempty when the input violates a case condition
  Vec lambda_sorted;        // case 1 canonical parameters
  std::optional<InvariantValue> inv;  // cases 2 and 3
};

/// Classifies the supported index-2 families: the parametric forms on an
/// indefinite plane (case 1, by sorting), the even-dimensional two-centre
/// family (case 2, column span) and the odd-dimensional one (case 3, span
/// plus wedge mod sign).
Index2Result classify_index2(const FamilySpec& spec, int orbit_bound = 8);

/// Human-readable generator description of the projected stabilizer.
std::string stabilizer_description(FamilyRow row);

/// Random element of the projected stabilizer, for invariance sampling.
/// Orthogonal parts come from Cayley transforms of rational antisymmetric
/// matrices, so every sample is exact.
Mat sample_stabilizer(FamilyRow row, std::mt19937_64& rng);

/// Rational orthogonal extension of a partial isometry (Witt-style, via
/// Householder reflections; requires a positive definite standard form).
/// Returns O with O * a_i = b_i; nullopt if the Gram matrices differ.
std::optional<Mat> extend_isometry(int dim, const std::vector<Vec>& from,
                                   const std::vector<Vec>& to);

}  // namespace metlie
