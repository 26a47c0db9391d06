#include "symclose/config.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

#include "symclose/errors.hpp"

namespace symclose {

using nlohmann::json;

Mode RunConfig::check_mode() const {
  if (mode == "lines") return Mode::Lines;
  if (mode == "hyperplanes") return Mode::Hyperplanes;
  if (mode == "reflection") return Mode::MidReflections;
  if (mode == "rotation") return Mode::Rotations;
  throw ParseError("unknown mode '" + mode +
                   "' (expected lines, hyperplanes, reflection, or rotation)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << text;
}

namespace {

double entry_value(const json& entry, const std::string& where) {
  if (entry.is_number()) return entry.get<double>();
  if (entry.is_string()) {
    auto r = Rational::parse(entry.get<std::string>());
    if (!r) throw ParseError(where + ": malformed rational '" +
                             entry.get<std::string>() + "'");
    return r->value();
  }
  throw ParseError(where + ": vector entries must be numbers or \"p/q\" strings");
}

template <typename T>
void read_option(const json& options, const char* key, T& slot) {
  if (auto it = options.find(key); it != options.end()) slot = it->get<T>();
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(source + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError(source + ": top level must be an object");

  RunConfig config;
  try {
    if (!doc.contains("n") || !doc["n"].is_number_integer())
      throw ParseError(source + ": missing integer field 'n'");
    config.n = doc["n"].get<int>();
    if (config.n < 2 || config.n > tol::kMaxAmbientDim)
      throw ParseError(source + ": n must be in [2, " +
                       std::to_string(tol::kMaxAmbientDim) + "]");

    if (!doc.contains("mode") || !doc["mode"].is_string())
      throw ParseError(source + ": missing string field 'mode'");
    config.mode = doc["mode"].get<std::string>();
    config.check_mode();  // validates the name

    if (!doc.contains("subspaces") || !doc["subspaces"].is_array() ||
        doc["subspaces"].empty())
      throw ParseError(source + ": 'subspaces' must be a nonempty array");

    int si = 0;
    for (const auto& sub : doc["subspaces"]) {
      std::string where = source + ": subspaces[" + std::to_string(si) + "]";
      if (!sub.is_array() || sub.empty())
        throw ParseError(where + " must be a nonempty array of vectors");
      std::vector<Vector> vectors;
      int vi = 0;
      for (const auto& vec : sub) {
        std::string vwhere = where + "[" + std::to_string(vi) + "]";
        if (!vec.is_array())
          throw ParseError(vwhere + " must be an array of entries");
        if (static_cast<int>(vec.size()) != config.n)
          throw ParseError(vwhere + " has length " + std::to_string(vec.size()) +
                           ", expected n = " + std::to_string(config.n));
        Vector v(config.n);
        for (int c = 0; c < config.n; ++c)
          v[c] = entry_value(vec[static_cast<size_t>(c)],
                             vwhere + "[" + std::to_string(c) + "]");
        vectors.push_back(std::move(v));
        ++vi;
      }
      config.subspaces.push_back(orthonormalize(vectors));
      ++si;
    }

    if (doc.contains("options")) {
      const json& options = doc["options"];
      if (!options.is_object())
        throw ParseError(source + ": 'options' must be an object");
      read_option(options, "dense_threshold", config.options.dense_threshold);
      read_option(options, "budget", config.options.budget);
      read_option(options, "probes", config.options.probes);
      read_option(options, "probe_seed", config.options.probe_seed);
      read_option(options, "orbit_seed", config.options.orbit_seed);
      read_option(options, "word_length", config.options.word_length);
      read_option(options, "word_policy", config.options.word_policy);
      read_option(options, "closure_cap", config.options.closure_cap);
      read_option(options, "closure_dedup_tol", config.options.closure_dedup_tol);
      read_option(options, "relation_bound", config.options.relation_bound);
      read_option(options, "precision_digits", config.options.precision_digits);
      read_option(options, "deadline_ms", config.options.deadline_ms);
      read_option(options, "min_confinement_samples",
                  config.options.min_confinement_samples);
      if (auto it = options.find("seed_point"); it != options.end()) {
        std::vector<double> pt = it->get<std::vector<double>>();
        if (static_cast<int>(pt.size()) != config.n)
          throw ParseError(source + ": options.seed_point must have length n");
        config.options.seed_point = std::move(pt);
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(source + ": " + e.what());
  }

  config.echo = doc.dump();
  return config;
}

RunConfig load_config(const std::string& path) {
  return parse_config_text(read_file(path), path);
}

namespace {

json basis_to_json(const Subspace& h) {
  json vectors = json::array();
  for (int c = 0; c < h.dim(); ++c) {
    json vec = json::array();
    for (int r = 0; r < h.ambient_dim(); ++r) vec.push_back(h.basis()(r, c));
    vectors.push_back(std::move(vec));
  }
  return vectors;
}

std::string mode_string(Mode mode) { return to_string(mode); }

}  // namespace

std::string witness_to_config_json(const WitnessConfig& witness) {
  json doc;
  doc["n"] = witness.ambient_dim;
  doc["mode"] = mode_string(witness.check_mode());
  json subs = json::array();
  for (const auto& h : witness.subspaces) subs.push_back(basis_to_json(h));
  doc["subspaces"] = std::move(subs);
  doc["options"] = json::object();
  json meta;
  meta["family"] = witness.mode == WitnessMode::Reflection ? "reflection" : "rotation";
  meta["theorem_tag"] = witness.theorem_tag;
  json specs = json::array();
  for (const auto& r : witness.angle_specs) specs.push_back(r.str());
  meta["angle_specs"] = std::move(specs);
  doc["witness"] = std::move(meta);
  return doc.dump(2) + "\n";
}

std::string counterexample_to_config_json(const CounterexampleConfig& config) {
  json doc;
  doc["n"] = config.ambient_dim;
  doc["mode"] = "rotation";
  json subs = json::array();
  json parts = json::array();
  int index = 0;
  for (const auto& part : config.parts) {
    json ids = json::array();
    for (const auto& h : part) {
      subs.push_back(basis_to_json(h));
      ids.push_back(index++);
    }
    parts.push_back(std::move(ids));
  }
  doc["subspaces"] = std::move(subs);
  doc["options"] = json::object();
  json meta;
  meta["parts"] = std::move(parts);
  meta["invariants"] = config.invariant_description;
  json spans = json::array();
  for (const auto& s : config.part_spans) spans.push_back(basis_to_json(s));
  meta["part_spans"] = std::move(spans);
  doc["counterexample"] = std::move(meta);
  return doc.dump(2) + "\n";
}

}  // namespace symclose
