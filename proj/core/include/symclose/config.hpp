#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symclose/conditions.hpp"
#include "symclose/subspace.hpp"
#include "symclose/witness.hpp"

namespace symclose {

/// Tunables carried by a run configuration; every field has the documented
/// default so configs may omit any of them.
struct RunOptions {
  double dense_threshold = 0.15;
  long budget = 100000;
  int probes = 2000;
  std::uint64_t probe_seed = 2026;
  std::uint64_t orbit_seed = 0;
  int word_length = 128;
  std::string word_policy = "random-words";  // or "alternating-powers"
  int closure_cap = 10000;
  double closure_dedup_tol = 1e-6;
  long long relation_bound = 10000;
  int precision_digits = 64;
  long long deadline_ms = 0;
  long min_confinement_samples = 1000;
  std::optional<std::vector<double>> seed_point;
};

/// A parsed run configuration: UTF-8 JSON with top-level keys n, mode,
/// subspaces, options. Vector entries are decimal numbers or exact rationals
/// written as strings "p/q".
struct RunConfig {
  int n = 0;
  std::string mode;                    // lines | hyperplanes | reflection | rotation
  std::vector<Subspace> subspaces;     // orthonormalized from the entries
  RunOptions options;
  std::string echo;                    // canonical re-serialization of the input

  Mode check_mode() const;             // throws ParseError on unknown mode
};

/// Parses a config file; ParseError messages carry the offending field.
RunConfig load_config(const std::string& path);

/// Parses config text directly (source label used in diagnostics).
RunConfig parse_config_text(const std::string& text, const std::string& source);

/// Serializes a witness into the run-config schema, round-trippable through
/// load_config.
std::string witness_to_config_json(const WitnessConfig& witness);

/// Serializes a counterexample as a rotation-mode config with the partition
/// and conserved quantities attached.
std::string counterexample_to_config_json(const CounterexampleConfig& config);

/// Reads a whole file; throws ParseError when unreadable.
std::string read_file(const std::string& path);

/// Writes text to a file; throws Error on failure.
void write_file(const std::string& path, const std::string& text);

}  // namespace symclose
