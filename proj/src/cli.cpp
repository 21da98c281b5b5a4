#include "metlie/cli.hpp"

#include <CLI11.hpp>

namespace metlie {

namespace {

Json axiom_json(const AxiomCheck& c) {
  Json j{{"status", c.pass ? "pass" : "fail"}};
  if (!c.pass && c.witness[0] >= 0)
    j["witness"] = Json::array({c.witness[0], c.witness[1], c.witness[2]});
  return j;
}

Json verify_json(const VerifyReport& r) {
  return Json{{"antisymmetry", axiom_json(r.antisymmetry)},
              {"jacobi", axiom_json(r.jacobi)},
              {"invariance", axiom_json(r.invariance)},
              {"nondegeneracy", axiom_json(r.nondegeneracy)},
              {"ok", r.ok()}};
}

}  // namespace

CliResult run_command(const std::vector<std::string>& args) {
  CLI::App app{"metric Lie algebra twofold extension toolkit"};
  app.require_subcommand(1);

  std::string out_path, format = "json";
  long seed = 20240501;
  int orbit_bound = 8;
  app.add_option("--out", out_path, "write the JSON report to this file");
  app.add_option("--seed", seed, "seed for randomized subcommands (reserved)");
  app.add_option("--orbit-bound", orbit_bound, "maximum m for orbit canonicalization");
  app.add_option("--format", format, "output format (json)");

  std::string in1, in2, witness_path;
  auto* c_verify = app.add_subcommand("verify", "check the metric Lie algebra axioms");
  c_verify->add_option("input", in1)->required();
  auto* c_build = app.add_subcommand("build", "build the algebra of twofold data");
  c_build->add_option("input", in1)->required();
  auto* c_centre = app.add_subcommand("centre", "centre of an algebra");
  c_centre->add_option("input", in1)->required();
  auto* c_derived = app.add_subcommand("derived", "derived algebra, series and class flags");
  c_derived->add_option("input", in1)->required();
  auto* c_signature = app.add_subcommand("signature", "signature of the algebra's form");
  c_signature->add_option("input", in1)->required();
  auto* c_regular = app.add_subcommand("regular", "regularity of twofold data");
  c_regular->add_option("input", in1)->required();
  auto* c_equiv = app.add_subcommand("equivalent", "extension equivalence of two data files");
  c_equiv->add_option("input1", in1)->required();
  c_equiv->add_option("input2", in2)->required();
  auto* c_dec = app.add_subcommand("decompose-check", "decomposability decision or witness check");
  c_dec->add_option("input", in1)->required();
  c_dec->add_option("--witness", witness_path, "verify this witness instead of deciding");
  auto* c_inv = app.add_subcommand("invariant", "canonical orbit invariant of a family spec");
  c_inv->add_option("input", in1)->required();
  auto* c_iso = app.add_subcommand("isomorphic", "isomorphism of two family specs");
  c_iso->add_option("input1", in1)->required();
  c_iso->add_option("input2", in2)->required();
  auto* c_idx2 = app.add_subcommand("classify-index2", "canonical descriptor of an index-2 family");
  c_idx2->add_option("input", in1)->required();
  auto* c_extract = app.add_subcommand("extract", "recover twofold data from an algebra");
  c_extract->add_option("input", in1)->required();

  CliResult res;
  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(std::vector<std::string>(argv_rev));  // CLI11 takes reversed args
  } catch (const CLI::ParseError& e) {
    res.exit_code = e.get_exit_code() == 0 ? 0 : 1;
    res.report = Json{{"error", e.what()}};
    return res;
  }
  if (format != "json") {
    res.exit_code = 1;
    res.report = Json{{"error", "unsupported format: " + format}};
    return res;
  }

  try {
    if (c_verify->parsed()) {
      res.report = verify_json(verify(algebra_from_json(load_json_file(in1))));
    } else if (c_build->parsed()) {
      TwofoldData d = twofold_from_json(load_json_file(in1));
      MetricLieAlgebra g = build(d);
      res.report = Json{{"algebra", algebra_to_json(g)}, {"verify", verify_json(verify(g))}};
      Signature s = signature(g.gram());
      res.report["signature"] = Json{{"neg", s.neg}, {"pos", s.pos}, {"null", s.null}};
    } else if (c_centre->parsed()) {
      MetricLieAlgebra g = algebra_from_json(load_json_file(in1));
      res.report = Json{{"centre", subspace_to_json(centre(g))}};
    } else if (c_derived->parsed()) {
      MetricLieAlgebra g = algebra_from_json(load_json_file(in1));
      Json ds = Json::array(), lc = Json::array();
      for (const auto& s : derived_series(g)) ds.push_back(s.dim());
      for (const auto& s : lower_central_series(g)) lc.push_back(s.dim());
      res.report = Json{{"derived", subspace_to_json(derived(g))},
                        {"derived_series_dims", ds},
                        {"lower_central_dims", lc},
                        {"solvable", is_solvable(g)},
                        {"nilpotent", is_nilpotent(g)},
                        {"abelian", is_abelian(g)}};
    } else if (c_signature->parsed()) {
      MetricLieAlgebra g = algebra_from_json(load_json_file(in1));
      Signature s = signature(g.gram());
      res.report = Json{{"neg", s.neg}, {"pos", s.pos}, {"null", s.null}};
    } else if (c_regular->parsed()) {
      RegularityReport r = regularity(twofold_from_json(load_json_file(in1)));
      Json w = Json::array();
      for (const Vec& v : r.witnesses) w.push_back(vec_to_json(v));
      res.report = Json{{"regular", r.regular}, {"witnesses", w}};
    } else if (c_equiv->parsed()) {
      TwofoldData d1 = twofold_from_json(load_json_file(in1));
      TwofoldData d2 = twofold_from_json(load_json_file(in2));
      auto tau = extension_equivalent(d1, d2);
      res.report = Json{{"equivalent", tau.has_value()}};
      if (tau) res.report["tau"] = cochain_to_json(*tau);
    } else if (c_dec->parsed()) {
      TwofoldData d = twofold_from_json(load_json_file(in1));
      if (!witness_path.empty()) {
        DecompWitness w = witness_from_json(load_json_file(witness_path), d.rep.l, d.rep.a);
        bool ok = verify_witness(d, w);
        res.report = Json{{"witness_ok", ok}};
        if (ok) res.report["ideal"] = subspace_to_json(witness_ideal(d, w));
      } else {
        EuclideanDecision dec = euclidean_decomposable(d);
        const char* kind = dec.kind == EuclideanDecision::Decomposable   ? "decomposable"
                           : dec.kind == EuclideanDecision::Indecomposable ? "indecomposable"
                                                                           : "undecided";
        res.report = Json{{"decision", kind}, {"note", dec.note}};
        if (dec.witness) res.report["witness"] = witness_to_json(*dec.witness);
        if (dec.kind == EuclideanDecision::Undecided) res.exit_code = 2;
      }
    } else if (c_inv->parsed()) {
      FamilySpec s = familyspec_from_json(load_json_file(in1));
      res.report = Json{{"spec", familyspec_to_json(s)},
                        {"invariant", invariant_to_json(invariant(s, orbit_bound))}};
    } else if (c_iso->parsed()) {
      FamilySpec s1 = familyspec_from_json(load_json_file(in1));
      FamilySpec s2 = familyspec_from_json(load_json_file(in2));
      IsoResult r = isomorphic_family(s1, s2, orbit_bound);
      res.report = Json{{"isomorphic", r.isomorphic}};
      if (!r.note.empty()) res.report["note"] = r.note;
      if (r.witness) {
        res.report["witness"] = Json{{"S", mat_to_json(r.witness->S)},
                                     {"U", mat_to_json(r.witness->U)},
                                     {"tau", cochain_to_json(r.witness->tau)}};
      }
    } else if (c_idx2->parsed()) {
      FamilySpec s = familyspec_from_json(load_json_file(in1));
      Index2Result r = classify_index2(s, orbit_bound);
      res.report = Json{{"case", r.case_id}};
      if (!r.failure.empty()) res.report["failure"] = r.failure;
      if (r.case_id == 1 && r.failure.empty()) res.report["lambda"] = vec_to_json(r.lambda_sorted);
      if (r.inv) res.report["invariant"] = invariant_to_json(*r.inv);
    } else if (c_extract->parsed()) {
      MetricLieAlgebra g = algebra_from_json(load_json_file(in1));
      try {
        Extraction ex = extract(g);
        res.report = Json{{"ok", true},
                          {"data", twofold_to_json(ex.data)},
                          {"iso", mat_to_json(ex.iso)}};
      } catch (const extract_error& e) {
        res.report = Json{{"ok", false}, {"reason", e.what()}};
      }
    }
  } catch (const orbit_bound_error& e) {
    res.exit_code = 2;
    res.report = Json{{"error", e.what()}};
  } catch (const unsupported_case& e) {
    res.exit_code = 2;
    res.report = Json{{"error", e.what()}};
  } catch (const input_error& e) {
    res.exit_code = 1;
    res.report = Json{{"error", e.what()}};
  } catch (const Json::exception& e) {
    res.exit_code = 1;
    res.report = Json{{"error", e.what()}};
  }
  return res;
}

}  // namespace metlie
