#include "metlie/families.hpp"

namespace metlie {

std::string family_row_name(FamilyRow row) {
  switch (row) {
    case FamilyRow::OscL1: return "osc1";
    case FamilyRow::L2K0: return "l2k0";
    case FamilyRow::L2K1: return "l2k1";
    case FamilyRow::L3K0G0: return "l3k0g0";
    case FamilyRow::L3K0G1: return "l3k0g1";
    case FamilyRow::L3K1: return "l3k1";
    case FamilyRow::L3K2: return "l3k2";
    case FamilyRow::L3K3: return "l3k3";
    case FamilyRow::DA: return "dA";
  }
  return "?";
}

FamilyRow family_row_from_name(const std::string& s) {
  if (s == "osc1") return FamilyRow::OscL1;
  if (s == "l2k0") return FamilyRow::L2K0;
  if (s == "l2k1") return FamilyRow::L2K1;
  if (s == "l3k0g0") return FamilyRow::L3K0G0;
  if (s == "l3k0g1") return FamilyRow::L3K0G1;
  if (s == "l3k1") return FamilyRow::L3K1;
  if (s == "l3k2") return FamilyRow::L3K2;
  if (s == "l3k3") return FamilyRow::L3K3;
  if (s == "dA") return FamilyRow::DA;
  throw input_error("unknown family row: " + s);
}

int family_row_l(FamilyRow row) {
  switch (row) {
    case FamilyRow::OscL1: case FamilyRow::DA: return 1;
    case FamilyRow::L2K0: case FamilyRow::L2K1: return 2;
    default: return 3;
  }
}

int family_row_k(FamilyRow row) {
  switch (row) {
    case FamilyRow::OscL1: case FamilyRow::L2K0:
    case FamilyRow::L3K0G0: case FamilyRow::L3K0G1: return 0;
    case FamilyRow::L2K1: case FamilyRow::L3K1: return 1;
    case FamilyRow::L3K2: return 2;
    case FamilyRow::L3K3: return 3;
    case FamilyRow::DA: return 0;
  }
  return 0;
}

int family_row_min_m(FamilyRow row) {
  switch (row) {
    case FamilyRow::OscL1: return 1;
    case FamilyRow::L2K0: return 3;
    case FamilyRow::L3K0G0: return 4;
    case FamilyRow::L3K1: return 2;
    default: return 0;
  }
}

}  // namespace metlie
