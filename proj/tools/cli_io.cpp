#include "cli_io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace fringelab::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// JSON has no NaN; failed fields become null and read back as NaN.
nlohmann::json number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

double read_number(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  return v.is_null() ? kNaN : v.get<double>();
}

template <class T>
void put_optional(nlohmann::json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
void get_optional(const nlohmann::json& j, const char* key, std::optional<T>& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

const char* family_name(fl_family family) {
  switch (family) {
    case FL_FAMILY_WERNER: return "werner";
    case FL_FAMILY_GISIN: return "gisin";
    case FL_FAMILY_PURE: return "pure";
    case FL_FAMILY_RANDOM: return "random";
  }
  return "unknown";
}

std::optional<fl_family> parse_family(const std::string& name) {
  for (fl_family f : {FL_FAMILY_WERNER, FL_FAMILY_GISIN, FL_FAMILY_PURE, FL_FAMILY_RANDOM}) {
    if (name == family_name(f)) return f;
  }
  return std::nullopt;
}

Row make_row(fl_family family, const fl_estimate_result& r) {
  Row row;
  row.family = family_name(family);
  row.param1 = r.param1;
  row.param2 = r.param2;
  row.v1 = r.report.v1;
  row.p12 = r.report.p12;
  row.est_p = r.report.estimated_p;
  row.est_c = r.report.estimated_c;
  row.oracle_c = r.report.has_oracle ? r.report.oracle_c : kNaN;
  row.abs_err = std::abs(row.est_c - row.oracle_c);
  row.feasibility = r.report.feasibility;
  if (r.sampled) {
    row.v1_std_error = r.v1_std_error;
    row.p12_std_error = r.p12_std_error;
    row.est_c_std_error = r.c_std_error;
    row.feasibility_rate = r.feasibility_rate;
    row.clamp_rate = r.clamp_rate;
  }
  if (r.inverted) {
    row.ambiguous = r.ambiguous != 0;
    row.solutions = r.solutions;
  }
  return row;
}

Row error_row(fl_family family, double param1, double param2, fl_status status, const std::string& message) {
  Row row;
  row.family = family_name(family);
  row.param1 = param1;
  row.param2 = param2;
  row.v1 = row.p12 = row.est_p = row.est_c = row.oracle_c = row.abs_err = row.feasibility = kNaN;
  row.error_code = fl_status_name(status);
  row.error_message = message;
  return row;
}

std::string csv_header() { return "family,param1,param2,v1,p12,est_p,est_c,oracle_c,abs_err,feasibility\n"; }

std::string csv_line(const Row& row) {
  std::string out = row.family;
  for (double v : {row.param1, row.param2, row.v1, row.p12, row.est_p, row.est_c, row.oracle_c, row.abs_err,
                   row.feasibility}) {
    out += ',';
    out += fmt12(v);
  }
  out += '\n';
  return out;
}

std::string to_csv(const std::vector<Row>& rows) {
  std::string out = csv_header();
  for (const Row& r : rows) out += csv_line(r);
  return out;
}

nlohmann::json row_to_json(const Row& row) {
  nlohmann::json j;
  j["family"] = row.family;
  j["param1"] = number(row.param1);
  j["param2"] = number(row.param2);
  j["v1"] = number(row.v1);
  j["p12"] = number(row.p12);
  j["est_p"] = number(row.est_p);
  j["est_c"] = number(row.est_c);
  j["oracle_c"] = number(row.oracle_c);
  j["abs_err"] = number(row.abs_err);
  j["feasibility"] = number(row.feasibility);
  put_optional(j, "v1_std_error", row.v1_std_error);
  put_optional(j, "p12_std_error", row.p12_std_error);
  put_optional(j, "est_c_std_error", row.est_c_std_error);
  put_optional(j, "feasibility_rate", row.feasibility_rate);
  put_optional(j, "clamp_rate", row.clamp_rate);
  put_optional(j, "ambiguous", row.ambiguous);
  put_optional(j, "solutions", row.solutions);
  if (row.error_code) j["error"] = {{"code", *row.error_code}, {"message", row.error_message.value_or("")}};
  return j;
}

Row row_from_json(const nlohmann::json& j) {
  Row row;
  row.family = j.at("family").get<std::string>();
  row.param1 = read_number(j, "param1");
  row.param2 = read_number(j, "param2");
  row.v1 = read_number(j, "v1");
  row.p12 = read_number(j, "p12");
  row.est_p = read_number(j, "est_p");
  row.est_c = read_number(j, "est_c");
  row.oracle_c = read_number(j, "oracle_c");
  row.abs_err = read_number(j, "abs_err");
  row.feasibility = read_number(j, "feasibility");
  get_optional(j, "v1_std_error", row.v1_std_error);
  get_optional(j, "p12_std_error", row.p12_std_error);
  get_optional(j, "est_c_std_error", row.est_c_std_error);
  get_optional(j, "feasibility_rate", row.feasibility_rate);
  get_optional(j, "clamp_rate", row.clamp_rate);
  get_optional(j, "ambiguous", row.ambiguous);
  get_optional(j, "solutions", row.solutions);
  if (j.contains("error")) {
    row.error_code = j.at("error").at("code").get<std::string>();
    row.error_message = j.at("error").at("message").get<std::string>();
  }
  return row;
}

nlohmann::json estimate_document(const Row& row, const nlohmann::json& config) {
  return {{"schema_version", kSchemaVersion}, {"command", "estimate"}, {"config", config}, {"report", row_to_json(row)}};
}

nlohmann::json sweep_document(const std::vector<Row>& rows, const nlohmann::json& config) {
  nlohmann::json list = nlohmann::json::array();
  for (const Row& r : rows) list.push_back(row_to_json(r));
  return {{"schema_version", kSchemaVersion}, {"command", "sweep"}, {"config", config}, {"rows", list}};
}

std::vector<Row> rows_from_document(const nlohmann::json& doc) {
  std::vector<Row> rows;
  if (doc.contains("report")) rows.push_back(row_from_json(doc.at("report")));
  if (doc.contains("rows")) {
    for (const auto& r : doc.at("rows")) rows.push_back(row_from_json(r));
  }
  return rows;
}

std::string error_record(const std::string& code, const std::string& message, int exit_code) {
  const nlohmann::json j = {{"schema_version", kSchemaVersion},
                            {"error", {{"code", code}, {"message", message}, {"exit_code", exit_code}}}};
  return j.dump() + "\n";
}

}  // namespace fringelab::cli
