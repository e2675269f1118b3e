#include "report.hpp"

#include <cmath>
#include <cstdio>

#include "bspace/bspace.hpp"

namespace bspace::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  // Adding +0.0 turns -0 into 0.
  std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);
  return buf;
}

std::string csv_field(const Cell& c) {
  if (c.is_null()) return "";
  if (c.is_boolean()) return c.get<bool>() ? "true" : "false";
  if (c.is_number_integer()) return std::to_string(c.get<std::int64_t>());
  if (c.is_number_unsigned()) return std::to_string(c.get<std::uint64_t>());
  if (c.is_number_float()) return csv_number(c.get<double>());
  const std::string s = c.is_string() ? c.get<std::string>() : c.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

void write_csv_table(const Table& t, std::ostream& out) {
  out << "# table: " << t.name << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << '\n';
  }
}

// JSON has no NaN or infinity; encode them as strings.
Json number_json(double v) {
  if (std::isfinite(v)) return v + 0.0;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

}  // namespace

bool Report::pass() const {
  for (const auto& v : verdicts)
    if (!v.pass) return false;
  return true;
}

Verdict& Report::check_less(const std::string& name, double value, double tol) {
  verdicts.push_back(Verdict{name, value, tol, "<", value < tol, std::nullopt});
  return verdicts.back();
}

Verdict& Report::check_at_most(const std::string& name, double value, double bound) {
  verdicts.push_back(Verdict{name, value, bound, "<=", value <= bound, std::nullopt});
  return verdicts.back();
}

Verdict& Report::check_at_least(const std::string& name, double value, double bound) {
  verdicts.push_back(Verdict{name, value, bound, ">=", value >= bound, std::nullopt});
  return verdicts.back();
}

Verdict& Report::check_close(const std::string& name, double value, double expected, double tol) {
  verdicts.push_back(Verdict{name, value, tol, "abs-diff<=", std::abs(value - expected) <= tol, expected});
  return verdicts.back();
}

Table& Report::table(const std::string& name, std::vector<std::string> columns) {
  tables.push_back(Table{name, std::move(columns), {}});
  return tables.back();
}

Json to_json(const Report& r) {
  Json j;
  j["tool"] = "bspace";
  j["version"] = kVersion;
  j["command"] = r.config.command;
  j["config"] = config_echo(r.config);
  j["resolved"] = r.resolved;
  j["outcome"] = r.outcome;
  j["pass"] = r.pass();
  j["scalars"] = r.scalars;
  Json verdicts = Json::array();
  for (const auto& v : r.verdicts) {
    Json e;
    e["name"] = v.name;
    e["value"] = number_json(v.value);
    if (v.expected) e["expected"] = number_json(*v.expected);
    e["relation"] = v.relation;
    e["tolerance"] = number_json(v.tolerance);
    e["pass"] = v.pass;
    verdicts.push_back(std::move(e));
  }
  j["verdicts"] = std::move(verdicts);
  Json tables = Json::object();
  for (const auto& t : r.tables) {
    Json rows = Json::array();
    for (const auto& row : t.rows) {
      Json out_row = Json::array();
      for (const auto& c : row) out_row.push_back(c.is_number_float() ? number_json(c.get<double>()) : c);
      rows.push_back(std::move(out_row));
    }
    tables[t.name] = Json{{"columns", t.columns}, {"rows", std::move(rows)}};
  }
  j["tables"] = std::move(tables);
  if (r.duration_seconds) j["duration_seconds"] = *r.duration_seconds;
  return j;
}

void emit_json(const Report& report, std::ostream& out) { out << to_json(report).dump(2) << '\n'; }

void emit_csv(const Report& report, std::ostream& out) {
  Table verdicts{"verdicts", {"name", "value", "expected", "relation", "tolerance", "pass"}, {}};
  for (const auto& v : report.verdicts) {
    verdicts.add({v.name, v.value, v.expected ? Cell(*v.expected) : Cell(nullptr), v.relation, v.tolerance, v.pass});
  }
  out << "# bspace " << kVersion << " " << report.config.command << " outcome=" << report.outcome
      << " pass=" << (report.pass() ? "true" : "false");
  if (report.duration_seconds) out << " duration_seconds=" << csv_number(*report.duration_seconds);
  out << '\n';
  write_csv_table(verdicts, out);
  for (const auto& t : report.tables) write_csv_table(t, out);
}

void emit(const Report& report, std::ostream& out) {
  if (report.config.format == Format::Csv) {
    emit_csv(report, out);
  } else {
    emit_json(report, out);
  }
}

}  // namespace bspace::cli
