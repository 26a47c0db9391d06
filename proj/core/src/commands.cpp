#include "symclose/commands.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>

#include "symclose/config.hpp"
#include "symclose/errors.hpp"
#include "symclose/orbit.hpp"
#include "symclose/rng.hpp"
#include "symclose/version.hpp"

namespace symclose {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

json report_shell(const char* command) {
  json report;
  report["artifact_version"] = kVersion;
  report["command"] = command;
  return report;
}

int finish(json& report, std::ostream& out, int exit_code, Clock::time_point start) {
  report["exit_code"] = exit_code;
  report["wall_time_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                               Clock::now() - start)
                               .count();
  out << report.dump(2) << "\n";
  return exit_code;
}

json condition_to_json(const ConditionReport& report) {
  json j;
  j["mode"] = to_string(report.mode);
  j["overall"] = to_string(report.overall);
  json hypotheses = json::array();
  for (const auto& h : report.hypotheses) {
    json hj;
    hj["name"] = h.name;
    hj["verdict"] = to_string(h.verdict);
    hj["detail"] = h.detail;
    if (h.bipartition) {
      hj["bipartition"] = json::array({h.bipartition->first, h.bipartition->second});
    }
    if (h.relation) hj["relation"] = *h.relation;
    hypotheses.push_back(std::move(hj));
  }
  j["hypotheses"] = std::move(hypotheses);
  j["notes"] = report.notes;
  return j;
}

json density_to_json(const DensityReport& report, long budget) {
  json j;
  j["verdict"] = to_string(report.verdict);
  j["covering_radius"] = report.covering_radius_estimate;
  j["threshold"] = report.threshold;
  j["probes"] = report.probes_used;
  j["budget"] = budget;
  json quantities = json::array();
  for (const auto& q : report.conserved.quantities) {
    json qj;
    qj["label"] = q.label;
    qj["reference"] = q.reference;
    qj["max_deviation"] = q.max_deviation;
    quantities.push_back(std::move(qj));
  }
  j["conserved"] = std::move(quantities);
  if (report.confining_candidate) j["confining_candidate"] = *report.confining_candidate;
  if (!report.note.empty()) j["note"] = report.note;
  return j;
}

json independence_to_json(const IndependenceVerdict& verdict) {
  json j;
  switch (verdict.outcome) {
    case IndependenceVerdict::Outcome::NoRelationAtBound:
      j["outcome"] = "no-relation-at-bound";
      break;
    case IndependenceVerdict::Outcome::RelationFound:
      j["outcome"] = "relation-found";
      break;
    case IndependenceVerdict::Outcome::Inconclusive:
      j["outcome"] = "inconclusive";
      break;
  }
  j["values"] = verdict.values;
  if (verdict.relation) j["relation"] = *verdict.relation;
  j["searched_bound"] = verdict.searched_bound;
  j["precision_digits"] = verdict.precision_digits;
  j["timed_out"] = verdict.timed_out;
  if (!verdict.note.empty()) j["note"] = verdict.note;
  return j;
}

int verdict_exit_code(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass:
      return 0;
    case Verdict::Fail:
      return 1;
    case Verdict::Heuristic:
      return 2;
  }
  return 2;
}

std::vector<OrthogonalMap> reflection_generators(const RunConfig& config) {
  std::vector<OrthogonalMap> maps;
  for (const auto& h : config.subspaces) maps.push_back(reflection(h));
  return maps;
}

// Conserved-quantity candidates: the spans of the orthogonality-graph
// components (of the complements in rotation mode, of the subspaces
// otherwise). A connected family yields no candidates.
std::vector<Subspace> conserved_candidates(const RunConfig& config) {
  std::vector<Subspace> family;
  if (config.check_mode() == Mode::Rotations) {
    for (const auto& h : config.subspaces) family.push_back(perp(h));
  } else {
    family = config.subspaces;
  }
  OrthogonalityGraph graph = orthogonality_graph(family);
  if (graph.components.size() < 2) return {};
  std::vector<Subspace> spans;
  for (const auto& comp : graph.components) {
    Subspace s = family[static_cast<size_t>(comp.front())];
    for (size_t m = 1; m < comp.size(); ++m)
      s = sum(s, family[static_cast<size_t>(comp[m])]);
    spans.push_back(std::move(s));
  }
  return spans;
}

Vector orbit_seed_point(const RunConfig& config) {
  if (config.options.seed_point) {
    Vector x(config.n);
    for (int c = 0; c < config.n; ++c) x[c] = (*config.options.seed_point)[static_cast<size_t>(c)];
    double nrm = x.norm();
    if (nrm < tol::kOrtho) throw ParseError("options.seed_point is the zero vector");
    return x / nrm;
  }
  rng::Stream stream(rng::mix(config.options.orbit_seed, 0x736565647074ULL));
  return stream.unit_vector(config.n);
}

void export_csv(const OrbitSample& sample, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write CSV: " + path);
  char buf[64];
  for (const auto& p : sample.points) {
    std::string line;
    for (int c = 0; c < static_cast<int>(p.size()); ++c) {
      auto res = std::to_chars(buf, buf + sizeof buf, p[c],
                               std::chars_format::general, 17);
      if (c > 0) line += ',';
      line.append(buf, res.ptr);
    }
    line += '\n';
    out << line;
  }
}

}  // namespace

int cmd_check(const std::string& config_path, std::ostream& out) {
  auto start = Clock::now();
  json report = report_shell("check");
  try {
    RunConfig config = load_config(config_path);
    report["config"] = json::parse(config.echo);
    EvaluateOptions opts;
    opts.relation_bound = config.options.relation_bound;
    opts.precision_digits = config.options.precision_digits;
    opts.deadline_ms = config.options.deadline_ms;
    ConditionReport cr = evaluate(config.subspaces, config.check_mode(), opts);
    report["condition_report"] = condition_to_json(cr);
    return finish(report, out, verdict_exit_code(cr.overall), start);
  } catch (const Error& e) {
    report["error"] = e.what();
    return finish(report, out, 3, start);
  }
}

int cmd_generate(int n, int i, const std::string& mode,
                 const std::string& output_path, std::ostream& out) {
  auto start = Clock::now();
  json report = report_shell("generate");
  try {
    WitnessConfig witness = [&] {
      if (mode == "lines") {
        if (i != 1)
          throw BadDimension("lines mode generates 1-dimensional subspaces; got i = " +
                             std::to_string(i));
        return lines_witness(n);
      }
      if (mode == "hyperplanes") {
        if (i != n - 1)
          throw BadDimension("hyperplanes mode needs i = n-1 = " + std::to_string(n - 1));
        return hyperplanes_witness(n);
      }
      if (mode == "reflection") {
        if (i == 1)
          throw BadDimension("i = 1 is the lines case; use mode 'lines'");
        if (i == n - 1)
          throw BadDimension("i = n-1 is handled by the hyperplane path; use mode "
                             "'hyperplanes' (direct mid-dim requires i <= n-2)");
        return reflection_witness(n, i);
      }
      if (mode == "rotation") return rotation_witness(n, i);
      throw ParseError("unknown generate mode '" + mode +
                       "' (expected lines, hyperplanes, reflection, or rotation)");
    }();

    std::string text = witness_to_config_json(witness);
    write_file(output_path, text);
    report["config"] = json::parse(text);
    report["output"] = output_path;
    report["subspace_count"] = witness.subspaces.size();
    return finish(report, out, 0, start);
  } catch (const Error& e) {
    report["error"] = e.what();
    return finish(report, out, 3, start);
  }
}

int cmd_orbit(const std::string& config_path, const OrbitArgs& args, std::ostream& out) {
  auto start = Clock::now();
  json report = report_shell("orbit");
  try {
    RunConfig config = load_config(config_path);
    if (args.budget) config.options.budget = *args.budget;
    if (args.threshold) config.options.dense_threshold = *args.threshold;
    if (args.seed) config.options.orbit_seed = *args.seed;
    if (args.probes) config.options.probes = *args.probes;
    if (config.options.budget < 1) throw ParseError("budget must be >= 1");
    report["config"] = json::parse(config.echo);
    validate_mode(config.subspaces, config.check_mode());

    std::vector<Generator> generators;
    if (config.check_mode() == Mode::Rotations) {
      for (const auto& h : config.subspaces) generators.emplace_back(StabilizerSpec{h});
    } else {
      for (auto& m : reflection_generators(config)) generators.emplace_back(std::move(m));
    }

    WordPolicy policy;
    policy.length = config.options.word_length;
    policy.seed = config.options.orbit_seed;
    if (config.options.word_policy == "alternating-powers")
      policy.kind = WordPolicy::Kind::AlternatingPowers;
    else if (config.options.word_policy != "random-words")
      throw ParseError("unknown word_policy '" + config.options.word_policy + "'");

    Vector x = orbit_seed_point(config);
    OrbitSample sample = sample_orbit(generators, x, config.options.budget, policy);

    SubSphere target{Subspace::full(config.n), Vector::Zero(config.n), 1.0};
    DensityOptions density_opts;
    density_opts.probe_count = config.options.probes;
    density_opts.probe_seed = config.options.probe_seed;
    density_opts.min_confinement_samples = config.options.min_confinement_samples;
    DensityReport dr = density_verdict(sample, target, config.options.dense_threshold,
                                       conserved_candidates(config), density_opts);
    report["density_report"] = density_to_json(dr, config.options.budget);

    if (!args.export_csv.empty()) {
      export_csv(sample, args.export_csv);
      report["export"] = args.export_csv;
    }

    int code = dr.verdict == DensityReport::Verdict::Dense      ? 0
               : dr.verdict == DensityReport::Verdict::Confined ? 1
                                                                : 2;
    return finish(report, out, code, start);
  } catch (const Error& e) {
    report["error"] = e.what();
    return finish(report, out, 3, start);
  }
}

int cmd_closure(const std::string& config_path, const ClosureArgs& args,
                std::ostream& out) {
  auto start = Clock::now();
  json report = report_shell("closure");
  try {
    RunConfig config = load_config(config_path);
    Mode mode = config.check_mode();
    if (mode == Mode::Rotations)
      throw ParseError("closure requires a reflection-family config "
                       "(lines, hyperplanes, or reflection mode)");
    validate_mode(config.subspaces, mode);
    if (args.cap) config.options.closure_cap = *args.cap;
    if (args.dedup_tol) config.options.closure_dedup_tol = *args.dedup_tol;
    report["config"] = json::parse(config.echo);

    FiniteClosureReport fc =
        finite_closure(reflection_generators(config), config.options.closure_cap,
                       config.options.closure_dedup_tol);
    json fj;
    fj["outcome"] = fc.finite() ? "finite" : "exceeded-cap";
    if (fc.finite()) fj["order"] = fc.order;
    fj["cap"] = fc.cap;
    fj["generators"] = fc.generators_count;
    fj["dedup_tol"] = fc.dedup_tol;
    report["finite_closure_report"] = std::move(fj);
    if (!fc.finite())
      report["notes"] = json::array(
          {"cap breach is evidence (not proof) that the generated reflection group "
           "is infinite; for lines it is open whether that alone forces full "
           "symmetry, so pair this with the check subcommand"});
    return finish(report, out, fc.finite() ? 1 : 0, start);
  } catch (const Error& e) {
    report["error"] = e.what();
    return finish(report, out, 3, start);
  }
}

int cmd_certify_cos(const std::string& rational_text, std::ostream& out) {
  auto start = Clock::now();
  json report = report_shell("certify");
  try {
    auto cosine = Rational::parse(rational_text);
    if (!cosine) throw ParseError("malformed rational cosine '" + rational_text + "'");
    AngleCertificate cert = certify_irrational_angle(*cosine);
    json cj;
    cj["cosine"] = cosine->str();
    if (cert.status == AngleCertificate::Status::CertifiedIrrationalMultipleOfPi) {
      cj["status"] = "certified-irrational-multiple-of-pi";
    } else {
      cj["status"] = "certified-rational-multiple-of-pi";
      cj["multiple_of_pi"] = cert.multiple->str();
    }
    report["certificate"] = std::move(cj);
    int code =
        cert.status == AngleCertificate::Status::CertifiedIrrationalMultipleOfPi ? 0 : 1;
    return finish(report, out, code, start);
  } catch (const Error& e) {
    report["error"] = e.what();
    return finish(report, out, 3, start);
  }
}

int cmd_certify_angles(const std::string& angles_path, const CertifyAnglesArgs& args,
                       std::ostream& out) {
  auto start = Clock::now();
  json report = report_shell("certify");
  try {
    std::istringstream in(read_file(angles_path));
    std::vector<double> angles;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::string trimmed;
      for (char ch : line)
        if (!std::isspace(static_cast<unsigned char>(ch))) trimmed += ch;
      if (trimmed.empty() || trimmed[0] == '#') continue;
      try {
        size_t used = 0;
        double v = std::stod(trimmed, &used);
        if (used != trimmed.size()) throw std::invalid_argument("trailing junk");
        angles.push_back(v);
      } catch (const std::exception&) {
        throw ParseError(angles_path + ":" + std::to_string(lineno) +
                         ": malformed angle '" + line + "'");
      }
    }
    if (angles.empty()) throw ParseError(angles_path + ": no angles found");

    IndependenceVerdict verdict = heuristic_independence(
        angles, args.bound, args.precision_digits, args.deadline_ms);
    report["independence"] = independence_to_json(verdict);
    int code = verdict.outcome == IndependenceVerdict::Outcome::NoRelationAtBound ? 0
               : verdict.outcome == IndependenceVerdict::Outcome::RelationFound  ? 1
                                                                                 : 2;
    return finish(report, out, code, start);
  } catch (const Error& e) {
    report["error"] = e.what();
    return finish(report, out, 3, start);
  }
}

}  // namespace symclose
