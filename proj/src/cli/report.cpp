#include "pil/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <iomanip>

namespace pil::report {

namespace {

nlohmann::ordered_json number_or_null(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) {
    return nullptr;
  }
  return *v;
}

std::string field(const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; }

}  // namespace

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

nlohmann::ordered_json to_json(const ResultRecord& r) {
  nlohmann::ordered_json j;
  j["alpha"] = r.alpha;
  j["direct"] = number_or_null(r.direct);
  j["direct_err_est"] = number_or_null(r.direct_err_est);
  j["reconstructed"] = number_or_null(r.reconstructed);
  j["closed_form"] = number_or_null(r.closed_form);
  j["disc_direct_closed"] = number_or_null(r.disc_direct_closed);
  j["disc_recon_direct"] = number_or_null(r.disc_recon_direct);
  j["pass"] = r.pass;
  return j;
}

nlohmann::ordered_json to_json(const ReportEnvelope& env) {
  nlohmann::ordered_json j;
  j["tool_version"] = env.tool_version;
  j["entry_id"] = env.entry_id;
  j["inputs"] = env.inputs;
  j["results"] = nlohmann::ordered_json::array();
  for (const ResultRecord& r : env.results) {
    j["results"].push_back(to_json(r));
  }
  j["overall_pass"] = env.overall_pass;
  return j;
}

void finalize(ReportEnvelope& env) {
  std::stable_sort(env.results.begin(), env.results.end(),
                   [](const ResultRecord& l, const ResultRecord& r) { return l.alpha < r.alpha; });
  env.overall_pass = std::all_of(env.results.begin(), env.results.end(),
                                 [](const ResultRecord& r) { return r.pass; });
}

void write_csv_header(std::ostream& os, bool with_id) {
  if (with_id) {
    os << "id,";
  }
  os << kCsvHeader << '\n';
}

void write_csv_rows(std::ostream& os, const std::vector<ResultRecord>& rows, std::string_view id) {
  for (const ResultRecord& r : rows) {
    if (!id.empty()) {
      os << id << ',';
    }
    os << format_number(r.alpha) << ',' << field(r.direct) << ',' << field(r.closed_form) << ','
       << field(r.disc_direct_closed) << '\n';
  }
}

void write_text(std::ostream& os, const ReportEnvelope& env) {
  os << env.entry_id << (env.overall_pass ? "  PASS" : "  FAIL") << '\n';
  auto cell = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string("-"); };
  for (const ResultRecord& r : env.results) {
    os << "  alpha " << std::left << std::setw(24) << format_number(r.alpha) << " direct "
       << std::setw(24) << cell(r.direct) << " closed " << std::setw(24) << cell(r.closed_form)
       << " recon " << std::setw(24) << cell(r.reconstructed) << (r.pass ? " ok" : " FAIL")
       << '\n';
  }
}

}  // namespace pil::report
