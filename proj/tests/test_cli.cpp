#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "symclose/commands.hpp"
#include "symclose/config.hpp"
#include "symclose/errors.hpp"
#include "symclose/witness.hpp"

using namespace symclose;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = SYMCLOSE_FIXTURE_DIR;
const std::string kCli = SYMCLOSE_CLI_PATH;

fs::path temp_dir() {
  fs::path dir = fs::temp_directory_path() / "symclose-cli-tests";
  fs::create_directories(dir);
  return dir;
}

std::string write_temp(const std::string& name, const std::string& text) {
  fs::path p = temp_dir() / name;
  std::ofstream out(p);
  out << text;
  return p.string();
}

int run_cli(const std::string& args) {
  int status = std::system((kCli + " " + args + " > /dev/null 2>&1").c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

json strip_timing(json report) {
  report.erase("wall_time_ms");
  return report;
}

}  // namespace

TEST_CASE("config parsing accepts rational and decimal entries") {
  RunConfig config = load_config(kFixtures + "/mirrors_irrational.json");
  CHECK(config.n == 2);
  CHECK(config.mode == "lines");
  REQUIRE(config.subspaces.size() == 2);
  CHECK(config.subspaces[1].basis()(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("config parsing rejects malformed input with diagnostics") {
  CHECK_THROWS_AS(load_config(kFixtures + "/malformed_vector.json"), ParseError);
  try {
    load_config(kFixtures + "/malformed_vector.json");
  } catch (const ParseError& e) {
    std::string message = e.what();
    CHECK(message.find("subspaces[0][0]") != std::string::npos);
    CHECK(message.find("length") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config_text("{", "inline"), ParseError);
  CHECK_THROWS_AS(parse_config_text(R"({"n":2,"mode":"bogus","subspaces":[[[1,0]]]})",
                                    "inline"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_config_text(R"({"n":2,"mode":"lines","subspaces":[[["x/y",0]]]})", "inline"),
      ParseError);
}

TEST_CASE("witness configs round-trip through the schema") {
  for (auto witness : {lines_witness(3), reflection_witness(4, 2), rotation_witness(4, 2)}) {
    RunConfig parsed = parse_config_text(witness_to_config_json(witness), "roundtrip");
    REQUIRE(parsed.subspaces.size() == witness.subspaces.size());
    for (size_t j = 0; j < parsed.subspaces.size(); ++j)
      CHECK(parsed.subspaces[j].same_span(witness.subspaces[j]));
  }
}

TEST_CASE("check command: exit codes for the canonical fixtures") {
  std::ostringstream sink;
  CHECK(cmd_check(kFixtures + "/duocylinder.json", sink) == 1);
  CHECK(cmd_check(kFixtures + "/malformed_vector.json", sink) == 3);

  std::string lines = write_temp("lines3.json", witness_to_config_json(lines_witness(3)));
  CHECK(cmd_check(lines, sink) == 0);

  std::string mid = write_temp("ref42.json",
                               witness_to_config_json(reflection_witness(4, 2)));
  CHECK(cmd_check(mid, sink) == 2);
}

TEST_CASE("check reports name the duocylinder bipartition") {
  std::ostringstream out;
  cmd_check(kFixtures + "/duocylinder.json", out);
  json report = json::parse(out.str());
  bool found = false;
  for (const auto& h : report["condition_report"]["hypotheses"]) {
    if (h["name"] == "no-orthogonal-bipartition") {
      CHECK(h["verdict"] == "fail");
      REQUIRE(h.contains("bipartition"));
      CHECK_FALSE(h["bipartition"][0].empty());
      CHECK_FALSE(h["bipartition"][1].empty());
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("check reports are deterministic modulo wall time") {
  std::ostringstream first, second;
  cmd_check(kFixtures + "/duocylinder.json", first);
  cmd_check(kFixtures + "/duocylinder.json", second);
  CHECK(strip_timing(json::parse(first.str())).dump() ==
        strip_timing(json::parse(second.str())).dump());
}

TEST_CASE("generate command writes configs that re-check cleanly") {
  std::ostringstream sink;
  std::string out_path = (temp_dir() / "gen_lines.json").string();
  CHECK(cmd_generate(3, 1, "lines", out_path, sink) == 0);
  CHECK(cmd_check(out_path, sink) == 0);

  std::string rot_path = (temp_dir() / "gen_rot.json").string();
  CHECK(cmd_generate(3, 1, "rotation", rot_path, sink) == 0);
  json rot = json::parse(read_file(rot_path));
  CHECK(rot["subspaces"].size() == 2);  // two axes
  CHECK(cmd_check(rot_path, sink) == 0);

  std::string mid_path = (temp_dir() / "gen_mid.json").string();
  CHECK(cmd_generate(4, 2, "reflection", mid_path, sink) == 0);
  json mid = json::parse(read_file(mid_path));
  CHECK(mid["subspaces"].size() == 3);  // ceil(4/2)+1
  CHECK(cmd_check(mid_path, sink) == 2);
}

TEST_CASE("generate command rejects out-of-range requests with guidance") {
  std::ostringstream out;
  CHECK(cmd_generate(3, 2, "reflection", (temp_dir() / "no.json").string(), out) == 3);
  json report = json::parse(out.str());
  std::string message = report["error"];
  CHECK(message.find("hyperplane") != std::string::npos);
  std::ostringstream sink;
  CHECK(cmd_generate(3, 2, "lines", (temp_dir() / "no2.json").string(), sink) == 3);
  CHECK(cmd_generate(4, 3, "rotation", (temp_dir() / "no3.json").string(), sink) == 3);
}

TEST_CASE("orbit command: duocylinder is confined, witnesses are dense") {
  std::ostringstream duo_out;
  OrbitArgs args;
  args.budget = 20000;
  CHECK(cmd_orbit(kFixtures + "/duocylinder.json", args, duo_out) == 1);
  json duo = json::parse(duo_out.str());
  CHECK(duo["density_report"]["verdict"] == "confined");
  bool conserved_block = false;
  for (const auto& q : duo["density_report"]["conserved"])
    if (q["max_deviation"].get<double>() < 1e-9) conserved_block = true;
  CHECK(conserved_block);

  std::string rot_path = write_temp("orbit_rot.json",
                                    witness_to_config_json(rotation_witness(3, 1)));
  std::ostringstream rot_out;
  CHECK(cmd_orbit(rot_path, args, rot_out) == 0);

  std::ostringstream tiny_out;
  OrbitArgs tiny;
  tiny.budget = 10;
  CHECK(cmd_orbit(kFixtures + "/duocylinder.json", tiny, tiny_out) == 2);
}

TEST_CASE("orbit command exports locale-independent CSV") {
  std::string csv_path = (temp_dir() / "points.csv").string();
  OrbitArgs args;
  args.budget = 64;
  args.export_csv = csv_path;
  std::ostringstream sink;
  REQUIRE(cmd_orbit(kFixtures + "/duocylinder.json", args, sink) == 2);

  std::ifstream in(csv_path);
  REQUIRE(in.good());
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(line.find(';') == std::string::npos);
    CHECK(line.find(',') != std::string::npos);
    int fields = 1;
    double norm_sq = 0.0;
    std::stringstream row(line);
    std::string cell;
    fields = 0;
    while (std::getline(row, cell, ',')) {
      ++fields;
      norm_sq += std::stod(cell) * std::stod(cell);
    }
    CHECK(fields == 4);
    CHECK(norm_sq == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(rows == 64);
}

TEST_CASE("orbit and closure reject mode-dimension mismatches") {
  // A lines-mode config holding a 2-dimensional subspace is invalid input.
  std::string bad = write_temp("bad_mode.json", R"({
    "n": 3,
    "mode": "lines",
    "subspaces": [[[1, 0, 0], [0, 1, 0]]]
  })");
  std::ostringstream sink;
  CHECK(cmd_check(bad, sink) == 3);
  CHECK(cmd_orbit(bad, {}, sink) == 3);
  CHECK(cmd_closure(bad, {}, sink) == 3);
}

TEST_CASE("orbit command honors the alternating-powers policy") {
  // Two mirrors at arccos(1/3): the pure double-reflection powers walk the
  // whole circle, so a modest budget is already dense at 0.15.
  std::string config = write_temp("kronecker.json", R"({
    "n": 2,
    "mode": "lines",
    "subspaces": [[[1, 0]], [["1/3", 0.9428090415820634]]],
    "options": {"word_policy": "alternating-powers", "budget": 10000}
  })");
  std::ostringstream out;
  CHECK(cmd_orbit(config, {}, out) == 0);
  json report = json::parse(out.str());
  CHECK(report["density_report"]["covering_radius"].get<double>() < 0.01);
}

TEST_CASE("closure command exit codes") {
  std::ostringstream finite_out;
  CHECK(cmd_closure(kFixtures + "/mirrors_pi4.json", {}, finite_out) == 1);
  json finite = json::parse(finite_out.str());
  CHECK(finite["finite_closure_report"]["outcome"] == "finite");
  CHECK(finite["finite_closure_report"]["order"] == 8);

  std::ostringstream breach_out;
  CHECK(cmd_closure(kFixtures + "/mirrors_irrational.json", {}, breach_out) == 0);
  json breach = json::parse(breach_out.str());
  CHECK(breach["finite_closure_report"]["outcome"] == "exceeded-cap");

  std::ostringstream sink;
  CHECK(cmd_closure(kFixtures + "/duocylinder.json", {}, sink) == 3);
}

TEST_CASE("certify command: rational cosines and angle files") {
  std::ostringstream sink;
  CHECK(cmd_certify_cos("1/3", sink) == 0);
  CHECK(cmd_certify_cos("1/2", sink) == 1);
  CHECK(cmd_certify_cos("7/4", sink) == 3);
  CHECK(cmd_certify_cos("nonsense", sink) == 3);

  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g\n%.17g\n", std::acos(1.0 / 3.0),
                std::acos(1.0 / 5.0));
  std::string angles = write_temp("angles.txt", buf);
  CHECK(cmd_certify_angles(angles, {}, sink) == 0);

  std::string rational = write_temp("rational.txt", "0.78539816339744828\n");
  CHECK(cmd_certify_angles(rational, {}, sink) == 1);

  std::string junk = write_temp("junk.txt", "not-a-number\n");
  CHECK(cmd_certify_angles(junk, {}, sink) == 3);
}

TEST_CASE("installed binary honors the exit-code contract end to end") {
  std::string lines = write_temp("proc_lines.json",
                                 witness_to_config_json(lines_witness(3)));
  CHECK(run_cli("check " + lines) == 0);
  CHECK(run_cli("check " + kFixtures + "/duocylinder.json") == 1);
  CHECK(run_cli("check " + kFixtures + "/malformed_vector.json") == 3);
  CHECK(run_cli("closure " + kFixtures + "/mirrors_pi4.json") == 1);
  CHECK(run_cli("certify --cos 1/3") == 0);

  std::string out_path = (temp_dir() / "proc_gen.json").string();
  CHECK(run_cli("generate 4 2 reflection -o " + out_path) == 0);
  CHECK(run_cli("check " + out_path) == 2);
}
