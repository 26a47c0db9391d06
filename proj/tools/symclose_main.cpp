// Command-line front end: see README.md for the subcommand and exit-code
// contract. All heavy lifting lives in the symclose library.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "symclose/commands.hpp"
#include "symclose/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"decide and demonstrate when subspace reflections or rotational "
               "stabilizers generate full rotational symmetry"};
  app.set_version_flag("--version", std::string(symclose::kVersion));
  app.require_subcommand(1);

  // check
  std::string check_config;
  auto* check = app.add_subcommand("check", "evaluate the hypothesis set of a config");
  check->add_option("config", check_config, "run-config JSON file")->required();

  // generate
  int gen_n = 0, gen_i = 0;
  std::string gen_mode, gen_output = "witness.json";
  auto* generate =
      app.add_subcommand("generate", "emit a witness family as a run config");
  generate->add_option("n", gen_n, "ambient dimension")->required();
  generate->add_option("i", gen_i, "subspace dimension")->required();
  generate->add_option("mode", gen_mode, "lines | hyperplanes | reflection | rotation")
      ->required();
  generate->add_option("-o,--output", gen_output, "output path (default witness.json)");

  // orbit
  std::string orbit_config, orbit_export;
  symclose::OrbitArgs orbit_args;
  long orbit_budget = 0;
  double orbit_threshold = 0.0;
  std::uint64_t orbit_seed = 0;
  int orbit_probes = 0;
  auto* orbit = app.add_subcommand("orbit", "sample an orbit and judge density");
  orbit->add_option("config", orbit_config, "run-config JSON file")->required();
  auto* bopt = orbit->add_option("--budget", orbit_budget, "orbit sample count");
  auto* topt = orbit->add_option("--threshold", orbit_threshold, "dense threshold");
  auto* sopt = orbit->add_option("--seed", orbit_seed, "orbit seed");
  auto* popt = orbit->add_option("--probes", orbit_probes, "covering-radius probes");
  orbit->add_option("--export", orbit_export, "write orbit points as CSV");

  // closure
  std::string closure_config;
  symclose::ClosureArgs closure_args;
  int closure_cap = 0;
  double closure_tol = 0.0;
  auto* closure =
      app.add_subcommand("closure", "enumerate the group generated by the reflections");
  closure->add_option("config", closure_config, "run-config JSON file")->required();
  auto* copt = closure->add_option("--cap", closure_cap, "max elements to retain");
  auto* dopt = closure->add_option("--tol", closure_tol, "dedup tolerance");

  // certify
  std::string certify_cos, certify_angles;
  symclose::CertifyAnglesArgs certify_args;
  auto* certify = app.add_subcommand(
      "certify", "certify an angle exactly or search for integer relations");
  auto* cos_opt = certify->add_option("--cos", certify_cos, "rational cosine p/q");
  auto* ang_opt =
      certify->add_option("--angles-file", certify_angles, "decimal angles, one per line");
  certify->add_option("--bound", certify_args.bound, "max relation coefficient");
  certify->add_option("--digits", certify_args.precision_digits, "working precision");
  certify->add_option("--deadline-ms", certify_args.deadline_ms,
                      "relation-search deadline (0 = none)");
  cos_opt->excludes(ang_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 3;
  }

  if (check->parsed()) return symclose::cmd_check(check_config, std::cout);

  if (generate->parsed())
    return symclose::cmd_generate(gen_n, gen_i, gen_mode, gen_output, std::cout);

  if (orbit->parsed()) {
    if (*bopt) orbit_args.budget = orbit_budget;
    if (*topt) orbit_args.threshold = orbit_threshold;
    if (*sopt) orbit_args.seed = orbit_seed;
    if (*popt) orbit_args.probes = orbit_probes;
    orbit_args.export_csv = orbit_export;
    return symclose::cmd_orbit(orbit_config, orbit_args, std::cout);
  }

  if (closure->parsed()) {
    if (*copt) closure_args.cap = closure_cap;
    if (*dopt) closure_args.dedup_tol = closure_tol;
    return symclose::cmd_closure(closure_config, closure_args, std::cout);
  }

  if (certify->parsed()) {
    if (!certify_cos.empty()) return symclose::cmd_certify_cos(certify_cos, std::cout);
    if (!certify_angles.empty())
      return symclose::cmd_certify_angles(certify_angles, certify_args, std::cout);
    std::cerr << "certify: need --cos or --angles-file\n";
    return 3;
  }

  return 3;
}
