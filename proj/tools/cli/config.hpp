#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace bspace::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitPass = 0,
  kExitVerdictFail = 1,
  kExitUsage = 2,  ///< unknown flag, unknown or missing command
  kExitNumerical = 3,
  kExitMalformedNumber = 4,
  kExitMissingField = 5,
  kExitInvalidValue = 6,  ///< well-formed but out of range, or rejected by the library
  kExitIo = 7,
};

/// An error that ends the run with a specific exit code. Code 0 carries help
/// or version text.
class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& message) : std::runtime_error(message), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

enum class Format { Json, Csv };

struct RunConfig {
  std::string command;
  std::optional<std::string> kernel;
  std::optional<std::string> measure;
  /// A descriptor string (builtin set or file path) or an inline points object.
  std::optional<nlohmann::ordered_json> points;
  std::optional<double> tol;
  std::uint64_t seed = 42;
  std::optional<std::size_t> samples;
  int level = 6;
  double scale = 1.0;
  std::optional<std::string> out;
  Format format = Format::Json;
  unsigned threads = 1;
  bool timing = false;
  std::string target = "exp:-1";
  double shift = 0.3;
  std::int64_t terms = 1000;
  std::int64_t k = 2;
  std::optional<std::vector<double>> mu1;
  std::optional<std::vector<double>> mu2;
  std::optional<std::vector<std::size_t>> phi;
};

const std::vector<std::string>& command_names();

/// Parses argv (argv[0] is the program name) and an optional --config JSON
/// file; flags override file values. Throws CliError.
RunConfig parse_config(const std::vector<std::string>& args);

/// The resolved configuration as JSON, for echoing in reports.
nlohmann::ordered_json config_echo(const RunConfig& config);

double parse_real(const std::string& text, const std::string& what);
std::int64_t parse_integer(const std::string& text, const std::string& what);

}  // namespace bspace::cli
