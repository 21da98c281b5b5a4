#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "metlie/cli.hpp"

using namespace metlie;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / "metlie-cli-test";
    std::filesystem::create_directories(path);
  }
  std::string file(const std::string& name, const Json& content) const {
    std::string p = (path / name).string();
    std::ofstream out(p);
    out << content.dump(2);
    return p;
  }
};

Json osc_spec(std::vector<std::vector<long>> lambda) {
  Json rows = Json::array();
  for (auto& r : lambda) {
    Json row = Json::array();
    for (long x : r) row.push_back(std::to_string(x));
    rows.push_back(row);
  }
  return Json{{"family", "osc"}, {"lambda", rows}};
}

}  // namespace

TEST_CASE("verify on a small abelian algebra") {
  TempDir dir;
  Json g{{"dim", 2},
         {"gram", Json::array({Json::array({"1", "0"}), Json::array({"0", "1"})})},
         {"brackets", Json::array()}};
  CliResult r = run_command({"verify", dir.file("ab2.json", g)});
  CHECK(r.exit_code == 0);
  CHECK(r.report.at("jacobi").at("status") == "pass");
  CHECK(r.report.at("invariance").at("status") == "pass");
  CHECK(r.report.at("ok") == true);
}

TEST_CASE("verify reports the failing axiom for redundant listings") {
  TempDir dir;
  Json g{{"dim", 2},
         {"gram", Json::array({Json::array({"0", "1"}), Json::array({"1", "0"})})},
         {"brackets", Json::array({Json{{"i", 0}, {"j", 1}, {"v", Json::array({"1", "0"})}},
                                   Json{{"i", 1}, {"j", 0}, {"v", Json::array({"1", "0"})}}})}};
  CliResult r = run_command({"verify", dir.file("bad.json", g)});
  CHECK(r.exit_code == 0);
  CHECK(r.report.at("antisymmetry").at("status") == "fail");
}

TEST_CASE("build, verify, extract round trip through files") {
  TempDir dir;
  Json spec = osc_spec({{1}, {2}});
  CliResult inv = run_command({"invariant", dir.file("osc.json", spec)});
  REQUIRE(inv.exit_code == 0);
  CHECK(inv.report.at("invariant").at("tag") == "lorentz");

  // Build the family data by hand through the library, then drive the CLI.
  FamilySpec fs = familyspec_from_json(spec);
  TwofoldData data = build_family(fs);
  std::string data_path = dir.file("osc-data.json", twofold_to_json(data));

  CliResult built = run_command({"build", data_path});
  REQUIRE(built.exit_code == 0);
  CHECK(built.report.at("verify").at("ok") == true);
  CHECK(built.report.at("signature").at("neg") == 1);

  std::string alg_path = dir.file("osc-alg.json", built.report.at("algebra"));
  CliResult ver = run_command({"verify", alg_path});
  CHECK(ver.exit_code == 0);
  CHECK(ver.report.at("ok") == true);

  CliResult ext = run_command({"extract", alg_path});
  REQUIRE(ext.exit_code == 0);
  REQUIRE(ext.report.at("ok") == true);
  TwofoldData back = twofold_from_json(ext.report.at("data"));
  Mat iso = mat_from_json(ext.report.at("iso"), "iso");
  int l = data.rep.l, a = data.rep.a;
  Mat s(l, l), u(a, a);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) s.at(i, j) = iso.at(l + a + i, l + a + j);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < a; ++j) u.at(i, j) = iso.at(l + i, l + j);
  TwofoldData pulled = transport(data, s, u);
  CHECK(pulled.rep == back.rep);
  CHECK(extension_equivalent(back, pulled).has_value());

  CliResult reg = run_command({"regular", data_path});
  CHECK(reg.exit_code == 0);
  CHECK(reg.report.at("regular") == true);

  CliResult dec = run_command({"decompose-check", data_path});
  CHECK(dec.exit_code == 0);
  CHECK(dec.report.at("decision") == "indecomposable");
}

TEST_CASE("isomorphic: permuted oscillator weights") {
  TempDir dir;
  std::string s1 = dir.file("o1.json", osc_spec({{1}, {2}, {3}}));
  std::string s2 = dir.file("o2.json", osc_spec({{1}, {3}, {2}}));
  CliResult r = run_command({"isomorphic", s1, s2});
  CHECK(r.exit_code == 0);
  CHECK(r.report.at("isomorphic") == true);
  CHECK(r.report.contains("witness"));

  std::string s3 = dir.file("o3.json", osc_spec({{1}, {3}}));
  std::string s4 = dir.file("o4.json", osc_spec({{1}, {2}}));
  CliResult r2 = run_command({"isomorphic", s3, s4});
  CHECK(r2.exit_code == 0);
  CHECK(r2.report.at("isomorphic") == false);
}

TEST_CASE("classify-index2 sorts the indefinite-plane parameters") {
  TempDir dir;
  Json spec{{"family", "dA"}, {"lambda", Json::array({Json::array({"2"}), Json::array({"1"})})}};
  CliResult r = run_command({"classify-index2", dir.file("da.json", spec)});
  CHECK(r.exit_code == 0);
  CHECK(r.report.at("case") == 1);
  CHECK(r.report.at("lambda") == Json::array({"1", "2"}));
}

TEST_CASE("exit codes separate input errors from unsupported cases") {
  TempDir dir;
  std::string bad = (dir.path / "nonexistent.json").string();
  CHECK(run_command({"verify", bad}).exit_code == 1);

  std::string malformed = dir.file("broken.json", Json{{"dim", 2}});
  CliResult r = run_command({"verify", malformed});
  CHECK(r.exit_code == 1);
  CHECK(r.report.contains("error"));

  // Orbit bound exceeded: unsupported case, exit 2.
  std::string spec = dir.file("osc4.json", osc_spec({{1, 0}, {0, 1}, {1, 1}, {1, 2}}));
  CliResult r2 = run_command({"invariant", "--orbit-bound", "2", spec});
  CHECK(r2.exit_code == 2);
}

TEST_CASE("reports are deterministic") {
  TempDir dir;
  std::string s1 = dir.file("d1.json", osc_spec({{1}, {2}, {3}}));
  std::string s2 = dir.file("d2.json", osc_spec({{1}, {3}, {2}}));
  CliResult a = run_command({"isomorphic", s1, s2});
  CliResult b = run_command({"isomorphic", s1, s2});
  CHECK(a.report.dump() == b.report.dump());
  CHECK(a.exit_code == b.exit_code);
}

TEST_CASE("equivalent verb matches the library result") {
  TempDir dir;
  FamilySpec fs = familyspec_from_json(osc_spec({{1}, {2}}));
  TwofoldData d = build_family(fs);
  Cochain tau = Cochain::zero(1, 1, 4);
  tau.set({0}, Vec{Rat(1), Rat(0), Rat(1, 2), Rat(0)});
  auto [a2, g2] = act(d.rep, d.alpha, d.gamma, tau);
  TwofoldData d2{d.rep, a2, g2};
  std::string p1 = dir.file("eq1.json", twofold_to_json(d));
  std::string p2 = dir.file("eq2.json", twofold_to_json(d2));
  CliResult r = run_command({"equivalent", p1, p2});
  CHECK(r.exit_code == 0);
  CHECK(r.report.at("equivalent") == true);
  Cochain back = cochain_from_json(r.report.at("tau"), 1, 4);
  auto [ra, rg] = act(d.rep, d.alpha, d.gamma, back);
  CHECK(ra == d2.alpha);
  CHECK(rg == d2.gamma);
}

TEST_CASE("decompose-check verifies witnesses from files") {
  TempDir dir;
  // Oscillator with a zero weight: decomposable; feed the reported witness
  // back through the file interface.
  Mat lambda(2, 1);
  lambda.at(0, 0) = 1;
  FamilySpec fs = make_family_spec(FamilyRow::OscL1, WeightMatrix::from(lambda));
  TwofoldData d = build_family(fs);
  std::string data_path = dir.file("osc10.json", twofold_to_json(d));
  CliResult dec = run_command({"decompose-check", data_path});
  REQUIRE(dec.exit_code == 0);
  REQUIRE(dec.report.at("decision") == "decomposable");
  REQUIRE(dec.report.contains("witness"));
  std::string wit_path = dir.file("osc10-wit.json", dec.report.at("witness"));
  CliResult chk = run_command({"decompose-check", "--witness", wit_path, data_path});
  CHECK(chk.exit_code == 0);
  CHECK(chk.report.at("witness_ok") == true);
  CHECK(chk.report.contains("ideal"));
}
