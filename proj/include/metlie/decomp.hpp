#pragma once

#include "metlie/families.hpp"
#include "metlie/twofold.hpp"

namespace metlie {

/// Explicit decomposition data: orthogonal complementary a-parts, complementary
/// l-parts, and the two correction maps. T1 maps the basis of l1 into a2,
/// T2 maps the basis of l2 into a1 (one a-coordinate column per basis vector).
struct DecompWitness {
  Subspace a1, a2;  // ambient a, a1 perp a2, a1 + a2 = a
  Subspace l1, l2;  // ambient l, l1 + l2 = l
  Mat T1;           // a x dim(l1)
  Mat T2;           // a x dim(l2)
};

/// Checks the splitting conditions exactly: invariance of the a-parts with
/// the cross actions vanishing, the alpha block conditions, the mixed alpha
/// identity through (T1, T2), and both gamma identities. True implies the
/// built algebra is decomposable.
bool verify_witness(const TwofoldData& data, const DecompWitness& w);

/// Non-degenerate proper ideal of build(data) induced by a verified witness:
/// the image under the triangular isometry of tau = T1 + T2 of the first
/// block (annihilator of l2) + a1 + l1.
Subspace witness_ideal(const TwofoldData& data, const DecompWitness& w);

struct EuclideanDecision {
  enum Kind { Decomposable, Indecomposable, Undecided } kind = Undecided;
  std::optional<DecompWitness> witness;
  std::string note;
};

/// Decomposability decision for Euclidean gramA with alpha valued in the
/// invariant subspace (data not in that form is first reduced along the
/// moving part; the reported witness always refers to the input data).
/// Exact for dim l <= 3; may return Undecided for l >= 4 or when the
/// weight-class structure of rho does not split rationally.
EuclideanDecision euclidean_decomposable(const TwofoldData& data);

/// Closed-form admissibility predicate of the classification tables,
/// per row. Admissible weights give indecomposable family members.
bool lambda_admissible(FamilyRow row, const WeightMatrix& lambda);

}  // namespace metlie
