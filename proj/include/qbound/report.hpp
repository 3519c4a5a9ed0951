#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qbound/documents.hpp"

namespace qbound {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "qbound.report/1";

/// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitInternal = 1, kExitInvalid = 2 };

struct CommonOptions {
  double tol = 1e-10;
  std::size_t jobs = 1;
};

struct FunctionSource {
  std::optional<std::filesystem::path> file;
  std::optional<std::string> family;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

struct BoundsRequest {
  FunctionSource function;
  std::vector<std::string> methods;  // unweighted, weighted, spectral, scheme, distance, ceiling
  std::optional<std::filesystem::path> relation;
  std::optional<std::filesystem::path> weights;
  std::optional<std::filesystem::path> gamma;
  std::optional<std::filesystem::path> distances;
  std::optional<std::filesystem::path> prob_scheme;
};

struct DivergenceRequest {
  std::optional<std::string> algorithm;  // grover, scan, uniform
  std::optional<std::filesystem::path> algorithm_file;
  FunctionSource function;  // reference function (and n for built-ins)
  std::size_t iters = 1;
  std::string pair;  // "X,Y" with digit strings or eJ
  double eps = 1.0 / 3.0;
};

/// A finished report plus the exit status it implies.
struct ReportResult {
  Json report;
  int exit_code = kExitOk;
};

ReportResult bounds_report(const BoundsRequest& request, const CommonOptions& common);
ReportResult divergence_report_document(const DivergenceRequest& request, const CommonOptions& common);
ReportResult family_document(const std::string& family, std::size_t n, std::uint64_t seed);

/// Diagnostic report for a failure outside any method.
Json error_report(const std::string& command, const std::string& kind, const std::string& message);

/// Tabular view of a report: bound entries, divergence steps, or table entries.
std::string to_csv(const Json& report);

/// Parses "e3" (unit vector) or a digit string of length n.
InputString parse_input_spec(std::string_view text, std::size_t n);

}  // namespace qbound
