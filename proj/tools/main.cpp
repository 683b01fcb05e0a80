// Command-line front end: validate | score | psych | gap | report.
//
// Exit codes: 0 success, 1 domain or validation failure, 2 I/O, schema, or
// usage failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "maturity/errors.hpp"
#include "maturity/gap.hpp"
#include "maturity/model.hpp"
#include "maturity/psychometrics.hpp"
#include "maturity/report.hpp"
#include "maturity/response_io.hpp"
#include "maturity/scoring.hpp"

namespace {

using namespace maturity;

std::string default_model_spec() {
  if (const char* env = std::getenv("MATURITY_MODEL"); env != nullptr && *env != '\0')
    return env;
  return "bundled";
}

MaturityModel resolve_model(const std::string& spec) {
  if (spec == "bundled") return bundled_model();
  return load_model_file(spec);
}

ReportFormat resolve_format(const std::string& name) {
  auto f = format_from_name(name);
  if (!f) throw Error(ErrorKind::schema, fmt::format("unknown format \"{}\"", name));
  return *f;
}

BlankPolicy resolve_blank_policy(const std::string& name) {
  if (name == "rate-as-1") return BlankPolicy::rate_as_1;
  if (name == "exclude") return BlankPolicy::exclude;
  throw Error(ErrorKind::schema, fmt::format("unknown blank policy \"{}\"", name));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, fmt::format("cannot read \"{}\"", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, fmt::format("cannot write \"{}\"", path));
  out << content;
}

std::vector<ResponseSet> load_responses(const std::vector<std::string>& files,
                                        const std::string& org,
                                        const std::string& respondent,
                                        const std::string& encoding_name_str) {
  auto encoding = encoding_from_name(encoding_name_str);
  if (!encoding)
    throw Error(ErrorKind::schema,
                fmt::format("unknown encoding \"{}\"", encoding_name_str));

  std::vector<ResponseSet> out;
  for (const auto& file : files) {
    bool is_csv = file.size() >= 4 && file.substr(file.size() - 4) == ".csv";
    if (is_csv) {
      if (org.empty())
        throw Error(ErrorKind::schema,
                    fmt::format("--org is required for CSV response file \"{}\"", file));
      std::string who =
          !respondent.empty() ? respondent : std::filesystem::path(file).stem().string();
      out.push_back(load_response_csv(read_file(file), org, who, *encoding));
    } else {
      ResponseSet r = load_response_json(read_file(file));
      if (!org.empty() && r.organization != org)
        throw Error(ErrorKind::mixed_organization,
                    fmt::format("\"{}\" belongs to organization \"{}\", not \"{}\"",
                                file, r.organization, org));
      out.push_back(std::move(r));
    }
  }
  return out;
}

// Group by organization and reduce each group to one response set.
std::map<std::string, ResponseSet> collapse_by_organization(
    const MaturityModel& model, std::vector<ResponseSet> responses) {
  std::map<std::string, std::vector<ResponseSet>> grouped;
  for (auto& r : responses) grouped[r.organization].push_back(std::move(r));

  std::map<std::string, ResponseSet> out;
  for (auto& [org, group] : grouped) {
    if (group.size() == 1)
      out.emplace(org, std::move(group.front()));
    else
      out.emplace(org, aggregate_respondents(model, group));
  }
  return out;
}

int cmd_validate(const std::string& model_spec) {
  MaturityModel m = resolve_model(model_spec);
  ValidationReport report = validate_model(m);
  for (const auto& violation : report) std::cout << violation << "\n";
  return report.empty() ? 0 : 1;
}

int cmd_score(const std::vector<std::string>& files, const std::string& model_spec,
              const std::string& org, const std::string& respondent,
              const std::string& encoding, const std::string& policy_name,
              const std::string& format_name_str, const std::string& output) {
  MaturityModel m = resolve_model(model_spec);
  BlankPolicy policy = resolve_blank_policy(policy_name);
  ReportFormat format = resolve_format(format_name_str);

  auto collapsed = collapse_by_organization(m, load_responses(files, org, respondent, encoding));
  ReportBundle bundle;
  for (const auto& [name, response] : collapsed)
    bundle.assessments.push_back(score_assessment(m, response, policy));

  write_output(output, render_bundle(bundle, m, format));
  return 0;
}

int cmd_psych(const std::string& pilot_file, const std::string& model_spec,
              const std::string& format_name_str, const std::string& output) {
  MaturityModel m = resolve_model(model_spec);
  ReportFormat format = resolve_format(format_name_str);

  PilotDataset dataset = load_pilot_csv(read_file(pilot_file));
  std::vector<ConstructStats> constructs = construct_validity(dataset, m);
  MtmmMatrix matrix = mtmm(dataset, m);

  write_output(output, render_psych(constructs, matrix, m, format));
  if (!output.empty()) {
    std::filesystem::path scree_path(output);
    scree_path.replace_extension();
    scree_path += "-scree.csv";
    write_output(scree_path.string(), scree_csv(constructs, m));
  }
  return 0;
}

int cmd_gap(const std::vector<std::string>& files, const std::string& model_spec,
            int target, const std::string& org, const std::string& respondent,
            const std::string& encoding, const std::string& policy_name,
            const std::string& format_name_str, const std::string& output) {
  MaturityModel m = resolve_model(model_spec);
  BlankPolicy policy = resolve_blank_policy(policy_name);
  ReportFormat format = resolve_format(format_name_str);

  auto collapsed = collapse_by_organization(m, load_responses(files, org, respondent, encoding));
  if (collapsed.size() != 1)
    throw Error(ErrorKind::mixed_organization,
                "gap analysis expects responses from exactly one organization");

  AssessmentResult result = score_assessment(m, collapsed.begin()->second, policy);
  std::optional<int> target_opt;
  if (target != 0) target_opt = target;
  GapReport report = analyze_gap(result, m, target_opt);

  write_output(output, render_gap(report, m, format));
  return 0;
}

int cmd_report(const std::string& bundle_file, const std::string& model_spec,
               const std::string& format_name_str, const std::string& output) {
  MaturityModel m = resolve_model(model_spec);
  ReportFormat format = resolve_format(format_name_str);
  ReportBundle bundle = parse_bundle_json(read_file(bundle_file));
  write_output(output, render_bundle(bundle, m, format));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Staged questionnaire-based maturity assessment"};
  app.require_subcommand(1);

  std::string model_spec = default_model_spec();
  std::string format = "text";
  std::string output;
  std::string org;
  std::string respondent;
  std::string encoding = "value";
  std::string blank_policy = "rate-as-1";
  std::vector<std::string> files;
  std::string pilot_file;
  std::string bundle_file;
  int target = 0;

  auto add_common = [&](CLI::App* cmd, bool with_output = true) {
    cmd->add_option("--model", model_spec, "Model JSON path, or \"bundled\"")
        ->capture_default_str();
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "markdown", "csv", "json"}))
        ->capture_default_str();
    if (with_output)
      cmd->add_option("--output", output, "Write the report here instead of stdout");
  };
  auto add_response_inputs = [&](CLI::App* cmd) {
    cmd->add_option("files", files, "Response files (JSON, or CSV with --org)")
        ->required()
        ->expected(-1);
    cmd->add_option("--org", org, "Organization (required for CSV; asserted for JSON)");
    cmd->add_option("--respondent", respondent, "Respondent id for CSV inputs");
    cmd->add_option("--encoding", encoding, "Answer encoding of CSV inputs")
        ->check(CLI::IsMember({"scale", "value", "percent"}))
        ->capture_default_str();
    cmd->add_option("--blank-policy", blank_policy, "How to treat blank answers")
        ->check(CLI::IsMember({"rate-as-1", "exclude"}))
        ->capture_default_str();
  };

  CLI::App* validate = app.add_subcommand("validate", "Check a model's structure");
  validate->add_option("--model", model_spec, "Model JSON path, or \"bundled\"")
      ->capture_default_str();

  CLI::App* score = app.add_subcommand("score", "Score responses and report levels");
  add_response_inputs(score);
  add_common(score);

  CLI::App* psych = app.add_subcommand("psych", "Reliability and validity analysis");
  psych->add_option("pilot", pilot_file, "Pilot data CSV (respondent,Q...)")->required();
  add_common(psych);

  CLI::App* gap = app.add_subcommand("gap", "What blocks the next level");
  add_response_inputs(gap);
  gap->add_option("--target", target, "Target level (default: current BML + 1)");
  add_common(gap);

  CLI::App* report = app.add_subcommand("report", "Re-render a JSON report bundle");
  report->add_option("bundle", bundle_file, "Bundle produced by --format json")
      ->required();
  add_common(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(model_spec);
    if (score->parsed())
      return cmd_score(files, model_spec, org, respondent, encoding, blank_policy,
                       format, output);
    if (psych->parsed()) return cmd_psych(pilot_file, model_spec, format, output);
    if (gap->parsed())
      return cmd_gap(files, model_spec, target, org, respondent, encoding,
                     blank_policy, format, output);
    if (report->parsed()) return cmd_report(bundle_file, model_spec, format, output);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_io_or_schema() ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
