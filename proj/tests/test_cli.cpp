#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lxkit/commands.hpp"
#include "lxkit/dilworth.hpp"
#include "lxkit/io.hpp"
#include "test_support.hpp"

using namespace lxkit;
using commands::RunConfig;
using foundation::Rational;
using foundation::Subset;
using io::Json;

namespace {

const std::string kData = LXKIT_TEST_DATA_DIR;
const std::string kTool = LXKIT_TOOL_PATH;

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("lxkit_cli_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void write_file(const std::filesystem::path& path, const std::string& text) { std::ofstream(path) << text; }

std::string read_file(const std::filesystem::path& path) {
  std::stringstream buf;
  buf << std::ifstream(path).rdbuf();
  return buf.str();
}

int run_tool(const std::string& args, const std::filesystem::path& out, const std::filesystem::path& err) {
  const std::string cmd = kTool + " " + args + " > " + out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const commands::Artifact* find_artifact(const commands::CommandResult& r, const std::string& name) {
  for (const auto& a : r.artifacts)
    if (a.name == name) return &a;
  return nullptr;
}

RunConfig lines_config(const std::string& file) {
  RunConfig c;
  c.command = "lines-matroid";
  c.input = kData + "/" + file;
  return c;
}

}  // namespace

TEST_CASE("rational and matrix JSON round trips") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    Rational r = testing::random_rational(rng, 1000, 97);
    CHECK(io::rational_from_json(io::to_json(r)) == r);
  }
  CHECK(io::rational_from_json(Json(-7)) == -7);
  CHECK_THROWS_AS(io::rational_from_json(Json(0.5)), InputError);
  auto m = testing::random_matrix(rng, 3, 5, 9, 4);
  CHECK(io::matrix_from_json(io::to_json(m)) == m);
  CHECK_THROWS_AS(io::matrix_from_json(io::parse_json("[[1,2],[3]]")), InputError);
}

TEST_CASE("subspace JSON: basis and Pluecker forms") {
  auto x = io::subspace_from_json(io::read_json_file(kData + "/x2.json"));
  CHECK(x.n == 6);
  CHECK(x.d == 2);
  const auto q = linespace::plucker_of(x);
  Json pj{{"plucker", io::to_json(q)}};
  auto y = io::subspace_from_json(pj);
  CHECK(y.n == 6);
  CHECK(y.d == 2);
  CHECK(linespace::plucker_of(y) == q);
  Json wrong = io::read_json_file(kData + "/x2.json");
  wrong["d"] = 3;
  CHECK_THROWS_AS(io::subspace_from_json(wrong), DimensionError);
  CHECK_THROWS_AS(io::subspace_from_json(io::parse_json("{\"n\": 4}")), InputError);
}

TEST_CASE("matroid, certificate and tropical JSON round trips") {
  const auto& m = dilworth::relabeled_dilworth_uniform(5, 2);
  CHECK(matroidcore::matroid_equal(io::matroid_from_json(io::to_json(m)), m));
  CHECK_THROWS_AS(io::matroid_from_json(io::parse_json(R"({"ground":["a"],"bases":[["b"]]})")), InputError);

  const auto cert = polyrel::saturation_certificate(Subset{4}, Subset{2, 3, 5}, Subset{1, 2, 3});
  const auto back = io::certificate_from_json(io::parse_json(io::to_json(cert).dump()));
  CHECK(back.exponent == cert.exponent);
  REQUIRE(back.combination.size() == cert.combination.size());
  for (std::size_t k = 0; k < cert.combination.size(); ++k) {
    CHECK(back.combination[k].incidence == cert.combination[k].incidence);
    CHECK(back.combination[k].coefficient == cert.combination[k].coefficient);
  }
  CHECK(polyrel::replay(back).holds);

  const auto p = io::trop_pluecker_from_json(io::read_json_file(kData + "/u34_trop.json"));
  CHECK(p[Subset({1, 2})] == tropfan::TropValue(-1));
  CHECK(io::to_json(tropfan::TropValue::neg_inf()) == "-inf");
  CHECK(io::trop_from_json(Json("-inf")).is_neg_inf());
  const auto mp = tropfan::matroid_pluecker(matroidcore::Matroid::uniform(2, 4));
  CHECK(io::trop_pluecker_from_json(io::to_json(mp)).values() == mp.values());
}

TEST_CASE("lines-matroid on the generic and special examples") {
  auto r1 = commands::run_command(lines_config("x1.json"));
  CHECK(r1.exit_code == commands::kExitOk);
  auto rep1 = io::parse_json(r1.report);
  CHECK(rep1["three_way_equal"] == true);
  CHECK(rep1["gale_duality"]["holds"] == true);
  CHECK(rep1["generic"] == true);
  for (auto name : {"U.json", "V.json", "matroid.json", "report.json"}) CHECK(find_artifact(r1, name) != nullptr);
  auto m1 = io::matroid_from_json(io::parse_json(find_artifact(r1, "matroid.json")->content));
  CHECK(matroidcore::matroid_equal(m1, dilworth::relabeled_dilworth_uniform(6, 2)));

  auto r2 = commands::run_command(lines_config("x2.json"));
  CHECK(r2.exit_code == commands::kExitOk);
  auto rep2 = io::parse_json(r2.report);
  CHECK(rep2["three_way_equal"] == true);
  CHECK(rep2["generic"] == false);

  auto c = lines_config("x1.json");
  c.e = 4;
  CHECK_THROWS_AS(commands::run_command(c), InputError);
  c.e = 3;
  c.emit = {"V"};
  auto r3 = commands::run_command(c);
  REQUIRE(r3.artifacts.size() == 1);
  CHECK(r3.artifacts[0].name == "V.json");
}

TEST_CASE("genericity command") {
  RunConfig c;
  c.command = "genericity";
  c.input = kData + "/x2.json";
  auto rep = io::parse_json(commands::run_command(c).report);
  CHECK(rep["is_generic"] == false);
  CHECK(!rep["vanishing_minor_columns"].empty());
  CHECK(rep["gr36_minor_values"][0] == "0");
  c.input = kData + "/x1.json";
  rep = io::parse_json(commands::run_command(c).report);
  CHECK(rep["is_generic"] == true);
  CHECK(rep["vanishing_minor_columns"].empty());
}

TEST_CASE("caps reject large instances unless lifted") {
  RunConfig c;
  c.command = "verify-identities";
  c.n = 9;
  c.d = 1;
  CHECK_THROWS_AS(commands::run_command(c), DimensionError);
  c.no_caps = true;
  CHECK(commands::run_command(c).exit_code == commands::kExitOk);
}

TEST_CASE("verify-identities counts and fault injection") {
  RunConfig c;
  c.command = "verify-identities";
  c.n = 5;
  c.d = 2;
  auto r = commands::run_command(c);
  CHECK(r.exit_code == commands::kExitOk);
  auto rep = io::parse_json(r.report);
  CHECK(rep["all_hold"] == true);
  CHECK(rep["certificates"]["checked"] ==
        foundation::binomial(5, 1) * foundation::binomial(5, 3));
  CHECK(rep["in2pl"]["checked"].get<int>() > 0);
  CHECK(rep["moveB"]["checked"].get<int>() > 0);

  c.inject_fault = true;
  auto bad = commands::run_command(c);
  CHECK(bad.exit_code == commands::kExitVerification);
  auto brep = io::parse_json(bad.report);
  CHECK(brep["all_hold"] == false);
  const auto failures = brep["in2pl"]["failures"].size() + brep["moveB"]["failures"].size();
  CHECK(failures == 1);
  const Json& f = brep["in2pl"]["failures"].empty() ? brep["moveB"]["failures"][0] : brep["in2pl"]["failures"][0];
  CHECK(f.contains("A"));
  CHECK(f.contains("B"));
  CHECK(f.contains("C"));
}

TEST_CASE("certify-saturation and replay-certificate") {
  auto dir = scratch("cert");
  RunConfig c;
  c.command = "certify-saturation";
  c.a_set = "4";
  c.b_set = "2,3,5";
  c.c_set = "1,2,3";
  c.output_dir = dir.string();
  auto r = commands::run_command(c);
  CHECK(r.exit_code == commands::kExitOk);
  commands::write_artifacts(r, c);

  RunConfig rc;
  rc.command = "replay-certificate";
  rc.certificate = (dir / "certificate.json").string();
  CHECK(commands::run_command(rc).exit_code == commands::kExitOk);

  auto j = io::read_json_file(rc.certificate);
  j["exponent"] = j["exponent"].get<int>() + 1;
  write_file(dir / "tampered.json", j.dump());
  rc.certificate = (dir / "tampered.json").string();
  auto bad = commands::run_command(rc);
  CHECK(bad.exit_code == commands::kExitVerification);
  CHECK(io::parse_json(bad.report)["holds"] == false);

  c.b_set = "2,3";
  CHECK_THROWS_AS(commands::run_command(c), DimensionError);
}

TEST_CASE("dilworth, bergman, tropcheck and export-dot") {
  auto dir = scratch("dil");
  RunConfig d;
  d.command = "dilworth";
  d.n = 4;
  d.k = 2;
  d.geometric = true;
  d.seed = 7;
  auto r = commands::run_command(d);
  CHECK(r.exit_code == commands::kExitOk);
  CHECK(io::parse_json(r.report)["geometric_agrees"] == true);
  write_file(dir / "dil.json", find_artifact(r, "matroid.json")->content);
  d.k = 9;
  CHECK_THROWS_AS(commands::run_command(d), InputError);

  RunConfig b;
  b.command = "bergman";
  b.matroid = (dir / "dil.json").string();
  b.smooth = true;
  auto br = commands::run_command(b);
  auto brep = io::parse_json(br.report);
  CHECK(brep["rays"] == 13);
  CHECK(brep["maximal_chains"] == 18);
  CHECK(brep["link"]["vertices"] == 10);
  CHECK(brep["link"]["edges"] == 15);
  CHECK(brep["link"]["regular_degree"] == 3);
  CHECK(brep["link"]["girth"] == 5);
  REQUIRE(find_artifact(br, "chart.json") != nullptr);
  CHECK(io::parse_json(find_artifact(br, "chart.json")->content)["rays"].size() == 13);

  RunConfig e;
  e.command = "export-dot";
  e.matroid = b.matroid;
  auto lat = commands::run_command(e);
  const auto& text = lat.report;
  CHECK(std::count(text.begin(), text.end(), '[') == 15);
  e.link = true;
  e.smooth = true;
  auto link = commands::run_command(e);
  CHECK(find_artifact(link, "lattice.dot") == nullptr);
  const auto& ltext = find_artifact(link, "link.dot")->content;
  CHECK(std::count(ltext.begin(), ltext.end(), '[') == 10);
  CHECK(ltext.find("--") != std::string::npos);

  write_file(dir / "empty.json", R"({"ground": [], "bases": [[]]})");
  e.matroid = (dir / "empty.json").string();
  CHECK_THROWS_AS(commands::run_command(e), InputError);

  RunConfig t;
  t.command = "tropcheck";
  t.p = kData + "/u34_trop.json";
  CHECK(commands::run_command(t).exit_code == commands::kExitOk);
  write_file(dir / "bad_trop.json", R"({"values": {"1,2": "0", "3,4": "0", "1,3": "-5", "2,4": "-5", "1,4": "-5", "2,3": "-5"}})");
  t.p = (dir / "bad_trop.json").string();
  auto tr = commands::run_command(t);
  CHECK(tr.exit_code == commands::kExitVerification);
  CHECK(io::parse_json(tr.report)["plucker_relations"] == false);
}

TEST_CASE("outputs are deterministic") {
  for (const char* file : {"x1.json", "x2.json"}) {
    auto a = commands::run_command(lines_config(file));
    auto b = commands::run_command(lines_config(file));
    CHECK(a.report == b.report);
    REQUIRE(a.artifacts.size() == b.artifacts.size());
    for (std::size_t k = 0; k < a.artifacts.size(); ++k) {
      CHECK(a.artifacts[k].name == b.artifacts[k].name);
      CHECK(a.artifacts[k].content == b.artifacts[k].content);
    }
  }
}

TEST_CASE("command-line tool: exit codes, stderr errors, byte-identical artifacts") {
  auto dir = scratch("tool");
  const auto out = dir / "stdout.txt", err = dir / "stderr.txt";

  write_file(dir / "malformed.json", "{\"basis\": [[1, 2,");
  CHECK(run_tool("lines-matroid --input " + (dir / "malformed.json").string(), out, err) == commands::kExitInput);
  auto e = io::parse_json(read_file(err));
  CHECK(e.contains("error"));
  CHECK(read_file(out).empty());

  CHECK(run_tool("lines-matroid --input " + kData + "/missing.json", out, err) == commands::kExitInput);
  CHECK(run_tool("no-such-command", out, err) == commands::kExitInput);

  const std::string args = "lines-matroid --input " + kData + "/x1.json --out ";
  REQUIRE(run_tool(args + (dir / "a").string(), out, err) == 0);
  REQUIRE(run_tool(args + (dir / "b").string(), out, err) == 0);
  for (auto name : {"U.json", "V.json", "matroid.json", "report.json"})
    CHECK(read_file(dir / "a" / name) == read_file(dir / "b" / name));
  CHECK(read_file(out) == read_file(dir / "b" / "report.json"));

  CHECK(run_tool("verify-identities --n 4 --d 2 --inject-fault", out, err) == commands::kExitVerification);
}
