#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace pil::report {

/// One parameter value of a report. Absent quantities serialize as null.
struct ResultRecord {
  double alpha = 0.0;
  std::optional<double> direct;
  std::optional<double> direct_err_est;
  std::optional<double> reconstructed;
  std::optional<double> closed_form;
  std::optional<double> disc_direct_closed;
  std::optional<double> disc_recon_direct;
  bool pass = false;
};

struct ReportEnvelope {
  std::string tool_version;
  std::string entry_id;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  std::vector<ResultRecord> results;  // ascending alpha
  bool overall_pass = false;
};

/// 17 significant digits, always '.', independent of the global locale.
std::string format_number(double v);

nlohmann::ordered_json to_json(const ResultRecord& r);
nlohmann::ordered_json to_json(const ReportEnvelope& env);

/// Sorts by alpha and sets overall_pass from the records.
void finalize(ReportEnvelope& env);

inline constexpr std::string_view kCsvHeader = "alpha,direct,closed_form,abs_diff";

/// Header plus one row per record. With a non-empty id_column every row starts
/// with the entry id and the header with "id,".
void write_csv_header(std::ostream& os, bool with_id);
void write_csv_rows(std::ostream& os, const std::vector<ResultRecord>& rows,
                    std::string_view id = {});

void write_text(std::ostream& os, const ReportEnvelope& env);

}  // namespace pil::report
