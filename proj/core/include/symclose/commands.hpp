#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace symclose {

/// Exit-code contract shared by the subcommands:
///   check:   0 pass, 1 fail, 2 heuristic/inconclusive, 3 input error
///   orbit:   0 dense, 1 confined, 2 inconclusive, 3 input error
///   closure: 0 cap exceeded (evidence of an infinite group), 1 finite,
///            3 input error
///   certify: 0 certified irrational / no relation, 1 rational multiple /
///            relation found, 2 unknown, 3 input error
/// Every command prints a JSON report to `out`.

int cmd_check(const std::string& config_path, std::ostream& out);

int cmd_generate(int n, int i, const std::string& mode,
                 const std::string& output_path, std::ostream& out);

struct OrbitArgs {
  std::optional<long> budget;
  std::optional<double> threshold;
  std::optional<std::uint64_t> seed;
  std::optional<int> probes;
  std::string export_csv;  // empty = no export
};

int cmd_orbit(const std::string& config_path, const OrbitArgs& args, std::ostream& out);

struct ClosureArgs {
  std::optional<int> cap;
  std::optional<double> dedup_tol;
};

int cmd_closure(const std::string& config_path, const ClosureArgs& args,
                std::ostream& out);

int cmd_certify_cos(const std::string& rational_text, std::ostream& out);

struct CertifyAnglesArgs {
  long long bound = 10000;
  int precision_digits = 64;
  long long deadline_ms = 0;
};

int cmd_certify_angles(const std::string& angles_path, const CertifyAnglesArgs& args,
                       std::ostream& out);

}  // namespace symclose
