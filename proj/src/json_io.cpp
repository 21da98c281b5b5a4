#include "metlie/json_io.hpp"

#include <fstream>

namespace metlie {

Json rat_to_json(const Rat& x) { return rat_str(x); }

Rat rat_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (!j.is_string()) throw input_error(where + ": expected a rational string");
  return rat_parse(j.get<std::string>());
}

Json mat_to_json(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(rat_to_json(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Mat mat_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw input_error(where + ": expected an array of rows");
  std::vector<Vec> rows;
  size_t cols = 0;
  for (size_t i = 0; i < j.size(); ++i) {
    const Json& r = j[i];
    if (!r.is_array()) throw input_error(where + ": row " + std::to_string(i) + " not an array");
    if (i == 0) cols = r.size();
    if (r.size() != cols) throw input_error(where + ": ragged rows");
    Vec row;
    for (size_t c = 0; c < r.size(); ++c)
      row.push_back(rat_from_json(r[c], where + "[" + std::to_string(i) + "][" +
                                             std::to_string(c) + "]"));
    rows.push_back(row);
  }
  return Mat::from_rows(rows, int(cols));
}

Json vec_to_json(const Vec& v) {
  Json a = Json::array();
  for (const Rat& x : v) a.push_back(rat_to_json(x));
  return a;
}

Vec vec_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw input_error(where + ": expected an array");
  Vec v;
  for (size_t i = 0; i < j.size(); ++i)
    v.push_back(rat_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

Json subspace_to_json(const Subspace& s) {
  return Json{{"ambient", s.ambient()}, {"dim", s.dim()}, {"basis", mat_to_json(s.basis())}};
}

Json algebra_to_json(const MetricLieAlgebra& g) {
  Json brackets = Json::array();
  for (int i = 0; i < g.dim(); ++i)
    for (int j = i + 1; j < g.dim(); ++j) {
      Vec v = g.bracket(i, j);
      if (vec_is_zero(v)) continue;
      brackets.push_back(Json{{"i", i}, {"j", j}, {"v", vec_to_json(v)}});
    }
  return Json{{"dim", g.dim()}, {"gram", mat_to_json(g.gram())}, {"brackets", brackets}};
}

MetricLieAlgebra algebra_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("gram"))
    throw input_error("algebra: need fields dim, gram");
  int n = j.at("dim").get<int>();
  if (n < 0) throw input_error("algebra: negative dimension");
  Mat gram = mat_from_json(j.at("gram"), "gram");
  if (gram.rows() != n || gram.cols() != n) throw input_error("algebra: gram must be dim x dim");
  MetricLieAlgebra g(n, gram);
  if (j.contains("brackets")) {
    if (!j.at("brackets").is_array()) throw input_error("algebra: brackets must be an array");
    for (size_t e = 0; e < j.at("brackets").size(); ++e) {
      const Json& ent = j.at("brackets")[e];
      std::string where = "brackets[" + std::to_string(e) + "]";
      if (!ent.contains("i") || !ent.contains("j") || !ent.contains("v"))
        throw input_error(where + ": need fields i, j, v");
      int i = ent.at("i").get<int>(), jj = ent.at("j").get<int>();
      Vec v = vec_from_json(ent.at("v"), where + ".v");
      if (i < 0 || jj < 0 || i >= n || jj >= n) throw input_error(where + ": index out of range");
      if (i == jj) {
        if (!vec_is_zero(v)) throw input_error(where + ": [x,x] must vanish");
        continue;
      }
      if (int(v.size()) != n) throw input_error(where + ": value has wrong dimension");
      if (i < jj)
        g.set_bracket(i, jj, v);
      else
        g.redundant_entries().push_back({i, jj, v});
    }
  }
  return g;
}

Json cochain_to_json(const Cochain& c) {
  Json entries = Json::array();
  for (const auto& [idx, v] : c.vals)
    entries.push_back(Json{{"idx", idx}, {"v", vec_to_json(v)}});
  return Json{{"deg", c.deg}, {"entries", entries}};
}

Cochain cochain_from_json(const Json& j, int l, int a) {
  if (!j.is_object() || !j.contains("deg")) throw input_error("cochain: need field deg");
  Cochain c = Cochain::zero(j.at("deg").get<int>(), l, a);
  if (c.deg < 0) throw input_error("cochain: negative degree");
  if (j.contains("entries"))
    for (size_t e = 0; e < j.at("entries").size(); ++e) {
      const Json& ent = j.at("entries")[e];
      std::string where = "entries[" + std::to_string(e) + "]";
      std::vector<int> idx = ent.at("idx").get<std::vector<int>>();
      c.set(idx, vec_from_json(ent.at("v"), where + ".v"));
    }
  return c;
}

Json form_to_json(const ScalarForm& f) {
  Json entries = Json::array();
  for (const auto& [idx, v] : f.vals)
    entries.push_back(Json{{"idx", idx}, {"v", rat_to_json(v)}});
  return Json{{"deg", f.deg}, {"entries", entries}};
}

ScalarForm form_from_json(const Json& j, int l) {
  if (!j.is_object() || !j.contains("deg")) throw input_error("form: need field deg");
  ScalarForm f = ScalarForm::zero(j.at("deg").get<int>(), l);
  if (j.contains("entries"))
    for (size_t e = 0; e < j.at("entries").size(); ++e) {
      const Json& ent = j.at("entries")[e];
      std::string where = "entries[" + std::to_string(e) + "]";
      f.set(ent.at("idx").get<std::vector<int>>(), rat_from_json(ent.at("v"), where + ".v"));
    }
  return f;
}

Json twofold_to_json(const TwofoldData& d) {
  Json rho = Json::array();
  for (const Mat& r : d.rep.rho) rho.push_back(mat_to_json(r));
  return Json{{"l", d.rep.l},
              {"a", d.rep.a},
              {"gramA", mat_to_json(d.rep.gramA)},
              {"rho", rho},
              {"alpha", cochain_to_json(d.alpha)},
              {"gamma", form_to_json(d.gamma)}};
}

TwofoldData twofold_from_json(const Json& j) {
  for (const char* f : {"l", "a", "gramA", "rho"})
    if (!j.contains(f)) throw input_error(std::string("twofold data: missing field ") + f);
  Rep rep;
  rep.l = j.at("l").get<int>();
  rep.a = j.at("a").get<int>();
  rep.gramA = mat_from_json(j.at("gramA"), "gramA");
  for (size_t i = 0; i < j.at("rho").size(); ++i)
    rep.rho.push_back(mat_from_json(j.at("rho")[i], "rho[" + std::to_string(i) + "]"));
  Cochain alpha = j.contains("alpha") ? cochain_from_json(j.at("alpha"), rep.l, rep.a)
                                      : Cochain::zero(2, rep.l, rep.a);
  ScalarForm gamma =
      j.contains("gamma") ? form_from_json(j.at("gamma"), rep.l) : ScalarForm::zero(3, rep.l);
  if (alpha.deg != 2) throw input_error("twofold data: alpha must have degree 2");
  if (gamma.deg != 3) throw input_error("twofold data: gamma must have degree 3");
  TwofoldData d{rep, alpha, gamma};
  d.validate();
  return d;
}

Json witness_to_json(const DecompWitness& w) {
  return Json{{"a1", mat_to_json(w.a1.basis())}, {"a2", mat_to_json(w.a2.basis())},
              {"l1", mat_to_json(w.l1.basis())}, {"l2", mat_to_json(w.l2.basis())},
              {"T1", mat_to_json(w.T1)},         {"T2", mat_to_json(w.T2)}};
}

static Subspace subspace_from_rows(const Json& j, int ambient, const std::string& where) {
  Mat m = mat_from_json(j, where);
  if (m.rows() == 0) return Subspace(ambient);
  if (m.cols() != ambient) throw input_error(where + ": wrong ambient dimension");
  return Subspace::span_rows(m);
}

DecompWitness witness_from_json(const Json& j, int l, int a) {
  DecompWitness w;
  w.a1 = subspace_from_rows(j.at("a1"), a, "a1");
  w.a2 = subspace_from_rows(j.at("a2"), a, "a2");
  w.l1 = subspace_from_rows(j.at("l1"), l, "l1");
  w.l2 = subspace_from_rows(j.at("l2"), l, "l2");
  w.T1 = j.contains("T1") ? mat_from_json(j.at("T1"), "T1") : Mat(a, w.l1.dim());
  w.T2 = j.contains("T2") ? mat_from_json(j.at("T2"), "T2") : Mat(a, w.l2.dim());
  return w;
}

Json familyspec_to_json(const FamilySpec& s) {
  std::string family = s.row == FamilyRow::DA      ? "dA"
                       : s.row == FamilyRow::L2K1  ? "d"
                       : s.row == FamilyRow::OscL1 ? "osc"
                       : s.row == FamilyRow::L2K0  ? "osc"
                                                   : "table";
  Json out{{"family", family}, {"row", family_row_name(s.row)},
           {"m", s.m},         {"k", s.k},
           {"l", s.l},         {"lambda", mat_to_json(s.lambda.entries)}};
  if (!s.warning.empty()) out["warning"] = s.warning;
  return out;
}

FamilySpec familyspec_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("family"))
    throw input_error("family spec: missing field family");
  std::string family = j.at("family").get<std::string>();
  Mat lambda =
      j.contains("lambda") ? mat_from_json(j.at("lambda"), "lambda") : Mat(0, 0);
  FamilyRow row;
  if (family == "osc") {
    int cols = lambda.cols();
    if (lambda.rows() == 0 && j.contains("l")) cols = j.at("l").get<int>();
    if (cols == 1)
      row = FamilyRow::OscL1;
    else if (cols == 2)
      row = FamilyRow::L2K0;
    else
      throw input_error("family osc: lambda must have 1 or 2 columns");
  } else if (family == "d") {
    row = FamilyRow::L2K1;
    if (lambda.rows() > 0 && lambda.cols() != 2)
      throw input_error("family d: lambda must have 2 columns");
  } else if (family == "dA") {
    row = FamilyRow::DA;
    if (lambda.rows() > 0 && lambda.cols() != 1)
      throw input_error("family dA: lambda must be a single column of parameters");
  } else if (family == "table") {
    if (!j.contains("row")) throw input_error("family table: missing field row");
    row = family_row_from_name(j.at("row").get<std::string>());
  } else {
    throw input_error("unknown family: " + family);
  }
  if (lambda.rows() == 0 && lambda.cols() == 0) lambda = Mat(0, family_row_l(row));
  if (lambda.cols() != family_row_l(row))
    throw input_error("lambda has the wrong number of columns for the row");
  if (j.contains("m") && j.at("m").get<int>() != lambda.rows())
    throw input_error("field m inconsistent with lambda");
  if (j.contains("l") && j.at("l").get<int>() != family_row_l(row))
    throw input_error("field l inconsistent with the row");
  if (j.contains("k") && j.at("k").get<int>() != family_row_k(row))
    throw input_error("field k inconsistent with the row");
  return make_family_spec(row, WeightMatrix::from(lambda));
}

Json invariant_to_json(const InvariantValue& v) {
  Json parts = Json::object();
  for (const auto& [label, m] : v.parts) parts[label] = mat_to_json(m);
  return Json{{"tag", invariant_tag_name(v.tag)}, {"parts", parts}};
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw input_error(path + ": " + e.what());
  }
}

}  // namespace metlie
