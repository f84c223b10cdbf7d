#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fadecap/cli/report_json.hpp"
#include "fadecap/cli/verify_suite.hpp"
#include "fadecap/errors.hpp"
#include "fadecap/fading_paper.hpp"
#include "fadecap/gaps.hpp"
#include "fadecap/worst_case.hpp"

namespace fadecap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitConsistency = 2;

namespace detail {

inline std::vector<double> number_array(const nlohmann::json& doc, const char* field) {
  if (!doc.contains(field)) throw ValidationError(std::string(field) + ": missing from input");
  const auto& a = doc.at(field);
  if (!a.is_array()) throw ValidationError(std::string(field) + ": must be an array of numbers");
  std::vector<double> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) {
      throw ValidationError(std::string(field) + "[" + std::to_string(i) + "]: must be a number");
    }
    out.push_back(a[i].get<double>());
  }
  return out;
}

inline FadingDistribution parse_distribution(std::istream& in, const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(source + ": not valid JSON (" + e.what() + ")");
  }
  if (!doc.is_object()) throw ValidationError(source + ": expected an object with gains and probs");
  return FadingDistribution{number_array(doc, "gains"), number_array(doc, "probs")};
}

inline FadingDistribution load_distribution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("input: cannot open " + path);
  return parse_distribution(in, path);
}

inline Units parse_units(const std::string& s) { return s == "bits" ? Units::bits : Units::nats; }

inline FamilyKind require_kind(const std::string& s) {
  const auto kind = parse_family_kind(s);
  if (!kind) throw ValidationError("kind: unknown family " + s);
  return *kind;
}

inline Json verify_json(const VerifySummary& s, const VerifyOptions& opt) {
  Json j;
  j["passed"] = s.ok();
  j["seed"] = opt.seed;
  j["trials"] = opt.trials;
  j["max_states"] = opt.max_states;
  j["instances"] = s.instances;
  j["worst_oracle_gap"] = s.worst_oracle_gap;
  Json checks = Json::array();
  for (const auto& [name, t] : s.checks) {
    Json c;
    c["name"] = name;
    c["passed"] = t.failed == 0;
    c["instances_passed"] = t.passed;
    c["instances_failed"] = t.failed;
    if (t.failed > 0) c["first_failure"] = t.first_failure;
    checks.push_back(c);
  }
  j["checks"] = checks;
  return j;
}

}  // namespace detail

/// Runs one CLI invocation. `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`. Returns 0 on success, 1 on invalid input, 2
/// when a consistency check fails.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Expected-capacity and gap analysis for finite-state slow-fading channels", "fadecap"};
  app.require_subcommand(1);

  std::string units = "nats";
  std::string format = "json";
  const auto add_units = [&](CLI::App* sub) {
    sub->add_option("--units", units, "Unit for rates and capacities")->check(CLI::IsMember({"nats", "bits"}));
  };

  std::string input_path;
  auto* capacity = app.add_subcommand("capacity", "Capacity report for a distribution file");
  capacity->add_option("--input", input_path, "JSON file {\"gains\": [...], \"probs\": [...]}")->required();
  add_units(capacity);

  std::string kind_name;
  std::size_t states = 0;
  double d = 0.0;
  std::string emit = "report";
  std::vector<double> coeffs;
  std::vector<double> probs;
  double snr = 0.0;
  auto* family = app.add_subcommand("family", "Generate a worst-case family or asymptotic-regime instance");
  family->add_option("--kind", kind_name, "additive | multiplicative | high_snr | low_snr")
      ->required()
      ->check(CLI::IsMember({"additive", "multiplicative", "high_snr", "low_snr"}));
  family->add_option("--states", states, "Number of states K (additive, multiplicative)");
  family->add_option("--d", d, "Family parameter d (additive, multiplicative)");
  family->add_option("--coefficients", coeffs, "Exponents r (high_snr) or slopes alpha (low_snr)")->delimiter(',');
  family->add_option("--probs", probs, "State probabilities (high_snr, low_snr)")->delimiter(',');
  family->add_option("--snr", snr, "SNR (high_snr, low_snr)");
  family->add_option("--emit", emit, "dist | report")->check(CLI::IsMember({"dist", "report"}));
  add_units(family);

  std::vector<double> d_values;
  std::string out_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate a family over several values of d");
  sweep_cmd->add_option("--kind", kind_name, "additive | multiplicative")
      ->required()
      ->check(CLI::IsMember({"additive", "multiplicative"}));
  sweep_cmd->add_option("--states", states, "Number of states K")->required();
  sweep_cmd->add_option("--d-values", d_values, "Comma-separated values of d")->delimiter(',');
  sweep_cmd->add_option("--out", out_path, "CSV output path");
  sweep_cmd->add_option("--format", format, "Output format when no --out is given")
      ->check(CLI::IsMember({"json", "csv"}));
  add_units(sweep_cmd);

  VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "Certify the closed form against the oracle and check all bounds");
  verify->add_option("--trials", vopt.trials, "Number of random channels");
  verify->add_option("--seed", vopt.seed, "Seed of the instance generator");
  verify->add_option("--max-states", vopt.max_states, "Largest K of the random channels")
      ->check(CLI::Range(std::size_t{2}, std::size_t{8}));
  verify->add_option("--tol", vopt.oracle_tol, "Oracle resolution")->check(CLI::PositiveNumber);

  double inr = 0.0;
  auto* fp = app.add_subcommand("fading-paper", "Bounds with transmitter-known interference scaled by the fade");
  fp->add_option("--input", input_path, "JSON distribution file")->required();
  fp->add_option("--inr", inr, "Transmit interference-to-noise ratio")->check(CLI::NonNegativeNumber);
  add_units(fp);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  const Units u = detail::parse_units(units);
  try {
    if (capacity->parsed()) {
      out << capacity_json(analyze(detail::load_distribution(input_path)), u).dump(2) << '\n';
    } else if (family->parsed()) {
      const FamilyKind kind = detail::require_kind(kind_name);
      FadingDistribution dist;
      if (kind == FamilyKind::high_snr) {
        dist = high_snr_instance(coeffs, probs, snr);
      } else if (kind == FamilyKind::low_snr) {
        dist = low_snr_instance(coeffs, probs, snr);
      } else {
        if (family->count("--states") == 0 || family->count("--d") == 0) {
          throw ValidationError("family: --states and --d are required for kind " + kind_name);
        }
        dist = family_instance(kind, states, d);
      }
      if (emit == "dist") {
        out << distribution_json(dist).dump(2) << '\n';
      } else {
        out << capacity_json(analyze(dist), u).dump(2) << '\n';
      }
    } else if (sweep_cmd->parsed()) {
      const auto rows = sweep(detail::require_kind(kind_name), states, d_values);
      if (!out_path.empty()) {
        std::ofstream file(out_path);
        if (!file) throw ValidationError("out: cannot write " + out_path);
        file << sweep_csv(rows, unit_scale(u));
        Json j;
        j["rows"] = rows.size();
        j["out"] = out_path;
        out << j.dump(2) << '\n';
      } else if (format == "csv") {
        out << sweep_csv(rows, unit_scale(u));
      } else {
        out << sweep_json(rows, u).dump(2) << '\n';
      }
    } else if (verify->parsed()) {
      const auto summary = run_verification(vopt);
      out << detail::verify_json(summary, vopt).dump(2) << '\n';
      if (!summary.ok()) {
        for (const auto& [name, t] : summary.checks) {
          if (t.failed > 0) err << "FAIL " << name << ": " << t.first_failure << '\n';
        }
        return kExitConsistency;
      }
    } else if (fp->parsed()) {
      out << fading_paper_json(fading_paper_report(detail::load_distribution(input_path), inr), u).dump(2) << '\n';
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << '\n';
    return kExitConsistency;
  }
  return kExitOk;
}

}  // namespace fadecap::cli
