#include "springsim/report.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "springsim/io_util.hpp"

namespace springsim {

ReportRow to_report_row(const ExperimentResult& r) {
  return {r.spec.label, r.spec.mass, r.spec.t_period, r.spec.amplitude, r.spec.h0,
          r.e0,         r.ea,        r.mu_star,       r.alpha0_star,    r.ratio};
}

std::string format_report(const std::vector<ReportRow>& rows) {
  std::string out = kReportHeader;
  out += '\n';
  for (const auto& r : rows) {
    const double fields[] = {r.m,  r.t_period, r.amplitude, r.h0, r.e0, r.ea, r.mu_star,
                             r.alpha0_star.value_or(std::nan("")), r.ratio};
    out += r.label;
    for (double f : fields) {
      out += ',';
      out += format_double(f);
    }
    out += '\n';
  }
  return out;
}

std::vector<ReportRow> parse_report(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<ReportRow> rows;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto at = origin + ":" + std::to_string(line_no) + ": ";
    if (!header) {
      if (body != kReportHeader) throw std::runtime_error(at + "unexpected report header");
      header = true;
      continue;
    }
    std::vector<std::string_view> cells;
    std::string_view rest = body;
    for (;;) {
      const auto comma = rest.find(',');
      cells.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (cells.size() != 10) throw std::runtime_error(at + "expected 10 columns");
    double v[9];
    for (int i = 0; i < 9; ++i) {
      const auto cell = trim(cells[static_cast<std::size_t>(i) + 1]);
      if (cell == "nan") {
        v[i] = std::nan("");
        continue;
      }
      auto parsed = parse_double(cell);
      if (!parsed) throw std::runtime_error(at + "bad number '" + std::string(cell) + "'");
      v[i] = *parsed;
    }
    ReportRow r{std::string(trim(cells[0])), v[0], v[1], v[2], v[3], v[4], v[5], v[6],
                std::isnan(v[7]) ? std::nullopt : std::optional<double>(v[7]), v[8]};
    rows.push_back(std::move(r));
  }
  if (!header) throw std::runtime_error(origin + ": empty report");
  return rows;
}

std::vector<ReportRow> load_report(const std::filesystem::path& path) {
  return parse_report(read_file(path), path.string());
}

}  // namespace springsim
