#pragma once

#include <json.hpp>

#include "metlie/classify.hpp"

namespace metlie {

using Json = nlohmann::json;

// Rationals travel as strings "p/q" (or "p"); matrices as row-major arrays
// of such strings. All basis indices in files are 0-based.

Json rat_to_json(const Rat& x);
Rat rat_from_json(const Json& j, const std::string& where);

Json mat_to_json(const Mat& m);
Mat mat_from_json(const Json& j, const std::string& where);

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j, const std::string& where);

Json subspace_to_json(const Subspace& s);

/// {"dim": n, "gram": [[s]], "brackets": [{"i", "j", "v"}]}; pairs with
/// i > j are accepted, retained, and cross-checked by verify.
Json algebra_to_json(const MetricLieAlgebra& g);
MetricLieAlgebra algebra_from_json(const Json& j);

/// {"deg": p, "entries": [{"idx": [...], "v": [s] | s}]}
Json cochain_to_json(const Cochain& c);
Cochain cochain_from_json(const Json& j, int l, int a);
Json form_to_json(const ScalarForm& f);
ScalarForm form_from_json(const Json& j, int l);

/// {"l", "a", "gramA", "rho": [[[s]]], "alpha", "gamma"}
Json twofold_to_json(const TwofoldData& d);
TwofoldData twofold_from_json(const Json& j);

Json witness_to_json(const DecompWitness& w);
DecompWitness witness_from_json(const Json& j, int l, int a);

/// {"family": "osc"|"d"|"dA"|"table", "row": id, "m", "k", "l", "lambda"}
Json familyspec_to_json(const FamilySpec& s);
FamilySpec familyspec_from_json(const Json& j);

Json invariant_to_json(const InvariantValue& v);

Json load_json_file(const std::string& path);

}  // namespace metlie
