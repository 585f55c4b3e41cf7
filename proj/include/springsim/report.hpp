#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "springsim/experiment.hpp"

namespace springsim {

struct ReportRow {
  std::string label;
  double m = 0.0;
  double t_period = 0.0;
  double amplitude = 0.0;
  double h0 = 0.0;
  double e0 = 0.0;
  double ea = 0.0;
  double mu_star = 0.0;
  std::optional<double> alpha0_star;
  double ratio = 0.0;
};

inline constexpr const char* kReportHeader = "label,m,T,A,h0,E0,Ea,mu_star,alpha0_star,ratio";

ReportRow to_report_row(const ExperimentResult& result);

std::string format_report(const std::vector<ReportRow>& rows);

// Throws std::runtime_error with file:line context on malformed input.
std::vector<ReportRow> parse_report(const std::string& text, const std::string& origin = "<report>");
std::vector<ReportRow> load_report(const std::filesystem::path& path);

}  // namespace springsim
