#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "json.hpp"

namespace bspace::cli {

/// One cell of a table: a number, an integer, a string or a boolean.
using Cell = nlohmann::ordered_json;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

/// A measured value next to the tolerance it was judged against.
struct Verdict {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  std::string relation;  ///< "<", "<=", ">=" or "abs-diff<=" (|value - expected| <= tolerance)
  bool pass = false;
  std::optional<double> expected;
};

struct Report {
  RunConfig config;
  nlohmann::ordered_json resolved = nlohmann::ordered_json::object();  ///< descriptors actually used
  nlohmann::ordered_json scalars = nlohmann::ordered_json::object();
  std::vector<Verdict> verdicts;
  std::vector<Table> tables;
  std::string outcome;  ///< command-specific summary, e.g. "member"
  std::optional<double> duration_seconds;

  bool pass() const;
  Verdict& check_less(const std::string& name, double value, double tol);
  Verdict& check_at_most(const std::string& name, double value, double bound);
  Verdict& check_at_least(const std::string& name, double value, double bound);
  Verdict& check_close(const std::string& name, double value, double expected, double tol);
  Table& table(const std::string& name, std::vector<std::string> columns);
};

nlohmann::ordered_json to_json(const Report& report);
void emit_json(const Report& report, std::ostream& out);
/// Every table, each preceded by a "# table: NAME" line; verdicts come first
/// as a table of their own.
void emit_csv(const Report& report, std::ostream& out);
void emit(const Report& report, std::ostream& out);

}  // namespace bspace::cli
