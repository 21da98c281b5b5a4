#pragma once

#include <string>

#include "metlie/matrix.hpp"

namespace metlie {

/// Weight data of the standard families: m weights, each a linear functional
/// on l, stored as the m x l matrix (lambda^j(L_i)). Zero rows are retained
/// but flagged, so inadmissible data can still be constructed for testing.
struct WeightMatrix {
  int m = 0;
  int l = 0;
  Mat entries;  // m x l

  static WeightMatrix from(const Mat& e) { return WeightMatrix{e.rows(), e.cols(), e}; }

  Vec weight_row(int j) const { return entries.row(j); }
  Vec column(int i) const { return entries.col(i); }
  bool has_zero_row() const {
    for (int j = 0; j < m; ++j)
      if (vec_is_zero(entries.row(j))) return true;
    return false;
  }
  bool operator==(const WeightMatrix&) const = default;
};

/// Rows of the classification tables plus the one-dimensional oscillator
/// family and the index-2 parametric family on an indefinite plane.
enum class FamilyRow {
  OscL1,    // l=1, k=0: alpha = 0, gamma = 0
  L2K0,     // l=2, k=0: alpha = 0, gamma = 0 (m >= 3)
  L2K1,     // l=2, k=1: alpha = Z1^Z2 (x) A1, gamma = 0
  L3K0G0,   // l=3, k=0: alpha = 0, gamma = 0 (m >= 4)
  L3K0G1,   // l=3, k=0: alpha = 0, gamma = Z1^Z2^Z3
  L3K1,     // l=3, k=1: alpha = Z1^Z2 (x) A1
  L3K2,     // l=3, k=2: alpha = Z1^Z2 (x) A1 + Z1^Z3 (x) A2
  L3K3,     // l=3, k=3: alpha = Z1^Z2 (x) A1 + Z1^Z3 (x) A2 + Z2^Z3 (x) A3
  DA,       // one-dimensional l acting on an indefinite plane plus rotations
};

std::string family_row_name(FamilyRow row);
FamilyRow family_row_from_name(const std::string& s);

int family_row_l(FamilyRow row);
int family_row_k(FamilyRow row);
int family_row_min_m(FamilyRow row);

}  // namespace metlie
