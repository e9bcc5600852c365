#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "projext/counterexample.hpp"
#include "projext/errors.hpp"
#include "projext/extension.hpp"
#include "projext/generators.hpp"
#include "projext/sampling.hpp"
#include "projext/serialization.hpp"
#include "projext/surjectivity.hpp"

namespace projext::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Outcome {
  Json report;
  bool overall = true;
  int code = kExitOk;
  std::string summary;
};

std::string read_file(const std::string& path) {
  if (path.empty()) {
    throw UsageError("--in is required for this command");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw UsageError("cannot read " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json config_json(const RunConfig& c) {
  Json j = {{"command", to_string(c.command)},
            {"input", c.input_path},
            {"seed", c.seed},
            {"samples", c.samples},
            {"tolerance_scale", c.tolerance_scale}};
  if (c.command == Command::counterexample) {
    j["profile"] = c.profile;
  }
  return j;
}

// The map a verify/certify document designates: "phi" of a result or report,
// or a bare linear map. Problems yield nullopt.
std::optional<LinearMapMatrix> designated_map(const Json& doc) {
  if (doc.is_object() && doc.contains("phi")) {
    return linear_map_from_json(doc["phi"], "/phi");
  }
  if (doc.is_object() && doc.contains("reports") && doc["reports"].is_array()) {
    for (std::size_t i = 0; i < doc["reports"].size(); ++i) {
      const Json& r = doc["reports"][i];
      if (r.is_object() && r.contains("phi")) {
        return linear_map_from_json(r["phi"],
                                    "/reports/" + std::to_string(i) + "/phi");
      }
    }
  }
  if (doc.is_object() && doc.contains("matrix")) {
    return linear_map_from_json(doc, "");
  }
  return std::nullopt;
}

std::string pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

Outcome gen(const RunConfig& c) {
  if (!c.input_path.empty()) {
    throw UsageError("gen does not take --in");
  }
  const InstanceBundle b = random_instance(SpecKind::injective, c.seed);
  Outcome o;
  o.report = to_json(b);
  std::ostringstream s;
  s << "gen: seed " << c.seed << ", source total_dim "
    << b.problem.source().total_dim() << ", target total_dim "
    << b.problem.target().total_dim() << "\n";
  o.summary = s.str();
  return o;
}

Outcome failure_outcome(const HypothesisError& e, const std::string& cmd) {
  Outcome o;
  o.overall = false;
  o.code = kExitHypothesis;
  o.report = Json::array({Json{{"kind", "hypothesis_failure"},
                               {"failing", to_json(e.failing())},
                               {"hypothesis_report", to_json(e.report())}}});
  o.summary = cmd + ": hypothesis violated: " + e.failing().name +
              " (residual " + std::to_string(e.failing().residual) + ", " +
              e.failing().context + ")\n";
  return o;
}

Outcome extend(const RunConfig& c, const Tolerances& tol) {
  const Json doc = parse_document(read_file(c.input_path));
  const ExtensionProblem prob = problem_from_json(doc);
  std::optional<LinearMapMatrix> truth;
  if (doc.contains("ground_truth")) {
    truth = instance_from_json(doc).ground_truth;
  }
  ExtensionResult res =
      extend_full(prob, ExtendOptions{c.samples, c.seed, tol, true});
  if (truth) {
    res.certificates.push_back(CertificateReport::make(
        "ground_truth_recovery", map_distance(res.phi, *truth), tol.residual,
        "map-norm distance to the generating Jordan map"));
  }
  Outcome o;
  Json r = to_json(res);
  r["kind"] = "extension";
  o.report = Json::array({r});
  o.overall = res.all_passed();
  o.code = o.overall ? kExitOk : kExitConclusion;
  std::size_t passed = 0;
  std::ostringstream s;
  for (const CertificateReport& cert : res.certificates) {
    passed += cert.passed ? 1 : 0;
    if (!cert.passed) {
      s << "  FAIL " << cert.name << " residual " << cert.residual
        << " tolerance " << cert.tolerance << "\n";
    }
  }
  o.summary = "extend: " + std::to_string(passed) + "/" +
              std::to_string(res.certificates.size()) +
              " certificates passed; overall " + pass_fail(o.overall) + "\n" +
              s.str();
  return o;
}

Outcome verify(const RunConfig& c, const Tolerances& tol) {
  const Json doc = parse_document(read_file(c.input_path));
  std::optional<LinearMapMatrix> map = designated_map(doc);
  if (!map) {
    map = problem_from_json(doc).u_map();
  }
  const BatteryReport positivity =
      positivity_probe(*map, c.samples, derive_seed(c.seed, 0), tol);
  const BatteryReport jordan =
      jordan_battery(*map, c.samples, derive_seed(c.seed, 1), tol);
  const BatteryReport equivalence =
      equivalence_battery(*map, c.samples, derive_seed(c.seed, 2), tol);
  Rng rng(derive_seed(c.seed, 3));
  std::vector<MonotoneChain> chains;
  for (int i = 0; i < std::min(c.samples, 20); ++i) {
    chains.push_back(MonotoneChain::of_projections(
        random_chain(random_nonzero_projection(map->domain(), rng), 4, rng)));
  }
  const BatteryReport normality = normality_check(*map, chains, tol);

  Outcome o;
  o.report = Json::array();
  for (const auto& [kind, battery] :
       {std::pair<const char*, const BatteryReport*>{"positivity_probe", &positivity},
        {"jordan_battery", &jordan},
        {"equivalence_battery", &equivalence},
        {"normality_check", &normality}}) {
    Json j = to_json(*battery);
    j["kind"] = kind;
    o.report.push_back(std::move(j));
  }
  o.overall = positivity.overall && jordan.overall && equivalence.overall &&
              normality.overall;
  o.code = o.overall ? kExitOk : kExitConclusion;
  o.summary = "verify: positivity " + pass_fail(positivity.overall) +
              ", jordan " + pass_fail(jordan.overall) + ", equivalence " +
              pass_fail(equivalence.overall) + " (agreement " +
              pass_fail(equivalence_agrees(equivalence)) + "), normality " +
              pass_fail(normality.overall) + "\n";
  return o;
}

Outcome certify(const RunConfig& c, const Tolerances& tol) {
  const Json doc = parse_document(read_file(c.input_path));
  std::optional<LinearMapMatrix> phi = designated_map(doc);
  if (!phi) {
    const ExtensionProblem prob = problem_from_json(doc);
    phi = extend_full(prob, ExtendOptions{c.samples, c.seed, tol, false}).phi;
  }
  const SurjectivityReport r =
      certify_jordan_isomorphism(*phi, c.samples, c.seed, tol);
  Outcome o;
  Json j = to_json(r);
  j["kind"] = "surjectivity";
  o.report = Json::array({j});
  const bool inverse_ok = !r.inverse_battery || r.inverse_battery->overall;
  if (r.verdict == Verdict::hypotheses_fail) {
    o.overall = false;
    o.code = kExitHypothesis;
  } else {
    o.overall = r.consistent && inverse_ok;
    o.code = o.overall ? kExitOk : kExitConclusion;
  }
  o.summary = "certify: verdict " + to_string(r.verdict) + ", range rank " +
              std::to_string(r.range_rank) + "/" +
              std::to_string(r.codomain_dim) + ", consistent " +
              pass_fail(r.consistent) + "\n";
  return o;
}

Outcome counterexample(const RunConfig& c, const Tolerances& tol) {
  const TwistMap t = TwistMap::from_name(c.profile);
  const double additivity =
      twist_additivity_residual(t, c.samples, derive_seed(c.seed, 0), tol);
  const double fit =
      nonextendability_witness(t, c.samples, derive_seed(c.seed, 1), tol);
  Outcome o;
  o.overall = additivity <= tol.twist_additivity;
  o.code = o.overall ? kExitOk : kExitConclusion;
  o.report = Json::array({Json{{"kind", "counterexample"},
                               {"profile", t.description},
                               {"samples", c.samples},
                               {"antipode_defect", antipode_defect(t)},
                               {"additivity_residual", additivity},
                               {"additivity_tolerance", tol.twist_additivity},
                               {"additivity_passed", o.overall},
                               {"fit_residual", fit},
                               {"fit_tolerance", tol.linear_fit},
                               {"linear_extension", fit <= tol.linear_fit}}});
  std::ostringstream s;
  s.precision(6);
  s << "counterexample: profile " << t.description << ", additivity residual "
    << additivity << " (" << pass_fail(o.overall) << "), best linear fit residual "
    << fit << (fit <= tol.linear_fit ? " (linear)" : " (no linear extension)")
    << "\n";
  o.summary = s.str();
  return o;
}

Outcome dispatch(const RunConfig& c) {
  const Tolerances tol = Tolerances{}.scaled(c.tolerance_scale);
  switch (c.command) {
    case Command::gen:
      return gen(c);
    case Command::extend:
      try {
        return extend(c, tol);
      } catch (const HypothesisError& e) {
        return failure_outcome(e, "extend");
      }
    case Command::verify:
      return verify(c, tol);
    case Command::certify:
      try {
        return certify(c, tol);
      } catch (const HypothesisError& e) {
        return failure_outcome(e, "certify");
      }
    case Command::counterexample:
      return counterexample(c, tol);
  }
  throw UsageError("unknown command");
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::gen:
      return "gen";
    case Command::extend:
      return "extend";
    case Command::verify:
      return "verify";
    case Command::certify:
      return "certify";
    case Command::counterexample:
      return "counterexample";
  }
  return "gen";
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.samples < 1) {
    err << "error: --samples must be at least 1\n";
    return kExitUsage;
  }
  if (!(config.tolerance_scale > 0.0) || !std::isfinite(config.tolerance_scale)) {
    err << "error: --tolerance-scale must be positive\n";
    return kExitUsage;
  }
  Outcome o;
  try {
    o = dispatch(config);
  } catch (const ParseError& e) {
    err << "error: " << config.input_path << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitConclusion;
  }

  Json doc = o.report;
  if (config.command != Command::gen) {
    doc = {{"command", to_string(config.command)},
           {"config", config_json(config)},
           {"reports", o.report},
           {"overall", o.overall}};
  }
  const std::string text = dump_canonical(doc);
  if (config.output_path.empty()) {
    out << text;
  } else {
    std::ofstream f(config.output_path, std::ios::binary);
    if (!f || !(f << text)) {
      err << "error: cannot write " << config.output_path << "\n";
      return kExitUsage;
    }
    out << o.summary;
  }
  return o.code;
}

int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Extension of support-projection maps to Jordan *-homomorphisms"};
  app.require_subcommand(1);
  RunConfig config;

  auto common = [&](CLI::App* sub, bool with_input) {
    if (with_input) {
      sub->add_option("--in", config.input_path, "input JSON document")
          ->required();
    }
    sub->add_option("--out", config.output_path,
                    "report path (default: report to stdout)");
    sub->add_option("--seed", config.seed, "random seed")->capture_default_str();
    sub->add_option("--samples", config.samples, "samples per battery")
        ->capture_default_str();
    sub->add_option("--tolerance-scale", config.tolerance_scale,
                    "multiplier for every comparison tolerance")
        ->capture_default_str();
  };
  CLI::App* gen = app.add_subcommand("gen", "generate a ground-truth instance");
  common(gen, false);
  CLI::App* ext = app.add_subcommand("extend", "extend and certify an instance");
  common(ext, true);
  CLI::App* ver = app.add_subcommand("verify", "run the map batteries");
  common(ver, true);
  CLI::App* cer = app.add_subcommand("certify", "decide Jordan *-isomorphism");
  common(cer, true);
  CLI::App* cex = app.add_subcommand("counterexample", "Bloch twist on M_2");
  common(cex, false);
  cex->add_option("--profile", config.profile, "zero, constant:<c> or sin")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  if (gen->parsed()) {
    config.command = Command::gen;
  } else if (ext->parsed()) {
    config.command = Command::extend;
  } else if (ver->parsed()) {
    config.command = Command::verify;
  } else if (cer->parsed()) {
    config.command = Command::certify;
  } else {
    config.command = Command::counterexample;
  }
  return run(config, out, err);
}

}  // namespace projext::cli
