#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fringelab/fringelab.h"

namespace fringelab::cli {

inline constexpr const char* kSchemaVersion = "1";

// One estimate, as written to CSV and JSON. Numeric fields are NaN when the
// row failed.
struct Row {
  std::string family;
  double param1 = 0.0;
  double param2 = 0.0;
  double v1 = 0.0;
  double p12 = 0.0;
  double est_p = 0.0;
  double est_c = 0.0;
  double oracle_c = 0.0;
  double abs_err = 0.0;
  double feasibility = 0.0;
  // shot mode
  std::optional<double> v1_std_error;
  std::optional<double> p12_std_error;
  std::optional<double> est_c_std_error;
  std::optional<double> feasibility_rate;
  std::optional<double> clamp_rate;
  // two-parameter inversion
  std::optional<bool> ambiguous;
  std::optional<std::int64_t> solutions;
  // failure
  std::optional<std::string> error_code;
  std::optional<std::string> error_message;

  friend bool operator==(const Row&, const Row&) = default;
};

const char* family_name(fl_family family);
std::optional<fl_family> parse_family(const std::string& name);

Row make_row(fl_family family, const fl_estimate_result& r);
Row error_row(fl_family family, double param1, double param2, fl_status status, const std::string& message);

std::string csv_header();
std::string csv_line(const Row& row);
std::string to_csv(const std::vector<Row>& rows);

nlohmann::json row_to_json(const Row& row);
Row row_from_json(const nlohmann::json& j);

// Full documents: {"schema_version": "1", "command": ..., ...}.
nlohmann::json estimate_document(const Row& row, const nlohmann::json& config);
nlohmann::json sweep_document(const std::vector<Row>& rows, const nlohmann::json& config);
std::vector<Row> rows_from_document(const nlohmann::json& doc);

std::string error_record(const std::string& code, const std::string& message, int exit_code);

}  // namespace fringelab::cli
