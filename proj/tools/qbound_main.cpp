// qbound: adversary lower bounds and query-model verification from the
// command line. Reports are JSON (default) or CSV.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qbound/errors.hpp"
#include "qbound/report.hpp"

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int emit(const qbound::Json& report, const std::string& format, const std::string& out_path) {
  const std::string text = format == "csv" ? qbound::to_csv(report) : report.dump(2) + "\n";
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return qbound::kExitOk;
  }
  std::ofstream out(out_path);
  if (!out || !(out << text)) {
    std::cerr << "qbound: cannot write '" << out_path << "'\n";
    return qbound::kExitInternal;
  }
  return qbound::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum and randomized query-complexity adversary bounds"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path;
  std::string format = "report";
  qbound::CommonOptions common;
  app.add_option("--out", out_path, "Write the report here instead of standard output");
  app.add_option("--format", format, "report (JSON) or csv")->check(CLI::IsMember({"report", "csv"}));
  app.add_option("--tol", common.tol, "Eigen solver tolerance")->check(CLI::PositiveNumber);
  app.add_option("--jobs", common.jobs, "Concurrent independent evaluations")->check(CLI::PositiveNumber);

  auto add_function_source = [](CLI::App* sub, qbound::FunctionSource& src) {
    sub->add_option("--function", src.file, "Function-table document");
    sub->add_option("--family", src.family, "Built-in family: or, ordered-search, sorting");
    sub->add_option("--n", src.n, "Family size parameter");
    sub->add_option("--seed", src.seed, "Seed for graph families");
  };

  qbound::BoundsRequest bounds;
  std::string methods = "unweighted,weighted,spectral,ceiling";
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate lower bounds for a function");
  add_function_source(bounds_cmd, bounds.function);
  bounds_cmd->add_option("--methods", methods,
                         "Comma list from unweighted,weighted,spectral,scheme,distance,ceiling");
  bounds_cmd->add_option("--relation", bounds.relation, "Relation document for the unweighted bound");
  bounds_cmd->add_option("--weights", bounds.weights, "Weight-scheme document");
  bounds_cmd->add_option("--gamma", bounds.gamma, "Adversary-matrix document");
  bounds_cmd->add_option("--distances", bounds.distances, "Distance-scheme document");
  bounds_cmd->add_option("--prob-scheme", bounds.prob_scheme, "Probability-scheme document");

  qbound::DivergenceRequest div;
  std::string eps_text;
  auto* div_cmd = app.add_subcommand("verify-divergence", "Check the divergence inequalities on a pair of runs");
  add_function_source(div_cmd, div.function);
  div_cmd->add_option("--algorithm", div.algorithm, "Built-in algorithm: grover, scan, uniform")
      ->check(CLI::IsMember({"grover", "scan", "uniform"}));
  div_cmd->add_option("--algorithm-file", div.algorithm_file, "Algorithm document");
  div_cmd->add_option("--iters", div.iters, "Queries (grover iterations) for built-ins");
  div_cmd->add_option("--pair", div.pair, "Inputs X,Y as digit strings or eJ")->required();
  div_cmd->add_option("--eps", eps_text, "Error bound (default 1/3)");

  std::string family;
  std::size_t family_n = 0;
  std::uint64_t family_seed = 0;
  auto* fam_cmd = app.add_subcommand("family", "Emit a built-in family or instance pair");
  fam_cmd->add_option("--family", family, "or, ordered-search, sorting, bipartiteness-pair, connectivity-pair")
      ->required();
  fam_cmd->add_option("--n", family_n, "Size parameter")->required();
  fam_cmd->add_option("--seed", family_seed, "Seed for graph pairs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? qbound::kExitOk : qbound::kExitInvalid;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  qbound::ReportResult result;
  try {
    if (command == "bounds") {
      bounds.methods = split_list(methods);
      result = qbound::bounds_report(bounds, common);
    } else if (command == "verify-divergence") {
      if (!eps_text.empty()) div.eps = qbound::to_double(qbound::parse_rational(eps_text));
      result = qbound::divergence_report_document(div, common);
    } else {
      result = qbound::family_document(family, family_n, family_seed);
    }
  } catch (const qbound::ParseError& e) {
    result = {qbound::error_report(command, "parse", e.what()), qbound::kExitInvalid};
  } catch (const qbound::DomainError& e) {
    result = {qbound::error_report(command, "domain", e.what()), qbound::kExitInvalid};
  } catch (const std::exception& e) {
    result = {qbound::error_report(command, "internal", e.what()), qbound::kExitInternal};
  }
  if (result.exit_code != qbound::kExitOk && result.report.contains("error")) {
    std::cerr << "qbound: " << result.report["error"]["message"].get<std::string>() << "\n";
  }
  const int rc = emit(result.report, format, out_path);
  return rc != qbound::kExitOk ? rc : result.exit_code;
}
