#include "config.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "bspace/bspace.hpp"

namespace bspace::cli {

namespace {

using Json = nlohmann::ordered_json;

const std::vector<std::string> kCommands = {"pd-check", "factorize", "isometry", "carleson", "adjoint-roundtrip",
                                            "project",  "gp",        "shannon",  "cantor-onb", "morphism"};

const std::set<std::string> kNeedsKernel = {"pd-check", "factorize", "isometry", "carleson",
                                            "adjoint-roundtrip", "project", "gp"};

// Raw option text as given on the command line.
struct RawOptions {
  std::string command, kernel, measure, points, tol, seed, samples, level, scale, out, format, threads, target, shift,
      terms, k, mu1, mu2, phi, config;
  bool timing = false;
  bool version = false;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::uint64_t parse_unsigned(const std::string& text, const std::string& what) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw CliError(kExitMalformedNumber, what + ": malformed non-negative integer '" + text + "'");
  }
  return v;
}

std::vector<double> parse_real_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_real(part, what));
  return out;
}

std::vector<std::size_t> parse_index_list(const std::string& text, const std::string& what) {
  std::vector<std::size_t> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_unsigned(part, what));
  return out;
}

// Config-file values may be JSON numbers or strings holding numbers.
std::string number_text(const Json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) {
    std::ostringstream os;
    os.precision(17);
    os << v.get<double>();
    return os.str();
  }
  throw CliError(kExitMalformedNumber, "config field '" + key + "' must be a number");
}

std::string string_value(const Json& v, const std::string& key) {
  if (!v.is_string()) throw CliError(kExitInvalidValue, "config field '" + key + "' must be a string");
  return v.get<std::string>();
}

std::string list_text(const Json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (!v.is_array()) throw CliError(kExitMalformedNumber, "config field '" + key + "' must be an array of numbers");
  std::string text;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) text += ',';
    text += number_text(v[i], key);
  }
  return text;
}

Json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(kExitIo, "cannot read config file '" + path + "'");
  try {
    Json doc = Json::parse(in);
    if (!doc.is_object()) throw CliError(kExitInvalidValue, "config file must hold a JSON object");
    return doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw CliError(kExitInvalidValue, "config file '" + path + "' is not valid JSON: " + e.what());
  }
}

std::string usage_text(const CLI::App& app) { return app.help(); }

}  // namespace

const std::vector<std::string>& command_names() { return kCommands; }

double parse_real(const std::string& text, const std::string& what) {
  if (text.empty()) throw CliError(kExitMalformedNumber, what + ": empty number");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) {
    throw CliError(kExitMalformedNumber, what + ": malformed number '" + text + "'");
  }
  return v;
}

std::int64_t parse_integer(const std::string& text, const std::string& what) {
  std::int64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw CliError(kExitMalformedNumber, what + ": malformed integer '" + text + "'");
  }
  return v;
}

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Finite-resolution boundary spaces of positive definite kernels", "bspace"};
  std::string commands;
  for (const auto& c : kCommands) commands += (commands.empty() ? "" : ", ") + c;
  app.footer("Commands: " + commands +
             "\n\nKernels:  szego, bargmann, cantor[:L], sinc, gram:FILE.json, feature:FILE.json"
             "\nMeasures: uniform:N, hermite:N, band:N, cantor, cantor-ifs:D, point:X, atoms[:W1,W2,...]"
             "\nPoints:   FILE.json, gridN, grid:N, disk:N[:R[:SEED]], index:N"
             "\n\nExit codes: 0 pass, 1 verdict failed, 2 usage, 3 numerical failure, 4 malformed number,"
             "\n            5 missing required field, 6 invalid value, 7 I/O error");

  RawOptions raw;
  app.add_option("command", raw.command, "Command to run")->type_name("COMMAND");
  app.add_option("--kernel", raw.kernel, "Kernel descriptor")->type_name("KERNEL");
  app.add_option("--measure", raw.measure, "Boundary measure descriptor (default depends on the kernel)")->type_name("MEASURE");
  app.add_option("--points", raw.points, "Points file or builtin point set")->type_name("POINTS");
  app.add_option("--tol", raw.tol, "Verdict tolerance (default depends on the command)")->type_name("NUM");
  app.add_option("--seed", raw.seed, "Random seed (default 42)")->type_name("INT");
  app.add_option("--samples", raw.samples, "Sample, trial or probe count")->type_name("INT");
  app.add_option("--level", raw.level, "Lambda4 level for cantor-onb (default 6)")->type_name("INT");
  app.add_option("--scale", raw.scale, "Multiply the measure by this factor (default 1)")->type_name("NUM");
  app.add_option("--out", raw.out, "Write the report to this file instead of stdout")->type_name("FILE");
  app.add_option("--format", raw.format, "Report format: json or csv (default json)")->type_name("json|csv");
  app.add_option("--threads", raw.threads, "Worker threads for matrix assembly (default 1)")->type_name("INT");
  app.add_option("--target", raw.target, "Target for project: exp:K (default exp:-1)")->type_name("TARGET");
  app.add_option("--shift", raw.shift, "Shift of the sinc target for shannon (default 0.3)")->type_name("NUM");
  app.add_option("--terms", raw.terms, "Shannon truncation N (default 1000)")->type_name("INT");
  app.add_option("--k", raw.k, "Frequency for the Parseval table of cantor-onb (default 2)")->type_name("INT");
  app.add_option("--mu1", raw.mu1, "Atom weights of the coarse measure for morphism")->type_name("W1,W2,...");
  app.add_option("--mu2", raw.mu2, "Atom weights of the fine measure for morphism")->type_name("W1,W2,...");
  app.add_option("--phi", raw.phi, "Atom map from the fine to the coarse boundary for morphism")->type_name("I1,I2,...");
  app.add_option("--config", raw.config, "JSON config file; flags override its values")->type_name("FILE");
  app.add_flag("--timing", raw.timing, "Include wall-clock duration in the report");
  app.add_flag("--version", raw.version, "Print the version and exit");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw CliError(kExitPass, usage_text(app));
  } catch (const CLI::ParseError& e) {
    throw CliError(kExitUsage, std::string(e.what()) + "\n\n" + usage_text(app));
  }
  if (raw.version) throw CliError(kExitPass, std::string("bspace ") + kVersion + "\n");

  const auto given = [&](const char* flag) { return app.count(flag) > 0; };

  if (given("--config")) {
    static const std::set<std::string> kKeys = {"command", "kernel", "measure", "points", "tol",    "seed",
                                                "samples", "level",  "scale",   "out",    "format", "threads",
                                                "target",  "shift",  "terms",   "k",      "mu1",    "mu2",
                                                "phi",     "timing"};
    const Json doc = load_config_file(raw.config);
    for (const auto& [key, value] : doc.items()) {
      if (!kKeys.count(key)) throw CliError(kExitUsage, "unknown config field '" + key + "'");
      const std::string flag = key == "command" ? "command" : "--" + key;
      if (given(flag.c_str())) continue;
      if (key == "command") raw.command = string_value(value, key);
      else if (key == "kernel") raw.kernel = string_value(value, key);
      else if (key == "measure") raw.measure = string_value(value, key);
      else if (key == "out") raw.out = string_value(value, key);
      else if (key == "format") raw.format = string_value(value, key);
      else if (key == "target") raw.target = string_value(value, key);
      else if (key == "timing") {
        if (!value.is_boolean()) throw CliError(kExitInvalidValue, "config field 'timing' must be a boolean");
        raw.timing = value.get<bool>();
      } else if (key == "points") {
        if (!value.is_string() && !value.is_object()) {
          throw CliError(kExitInvalidValue, "config field 'points' must be a string or a points object");
        }
        raw.points = value.is_string() ? value.get<std::string>() : value.dump();
      } else if (key == "mu1") raw.mu1 = list_text(value, key);
      else if (key == "mu2") raw.mu2 = list_text(value, key);
      else if (key == "phi") raw.phi = list_text(value, key);
      else if (key == "tol") raw.tol = number_text(value, key);
      else if (key == "seed") raw.seed = number_text(value, key);
      else if (key == "samples") raw.samples = number_text(value, key);
      else if (key == "level") raw.level = number_text(value, key);
      else if (key == "scale") raw.scale = number_text(value, key);
      else if (key == "threads") raw.threads = number_text(value, key);
      else if (key == "shift") raw.shift = number_text(value, key);
      else if (key == "terms") raw.terms = number_text(value, key);
      else if (key == "k") raw.k = number_text(value, key);
    }
  }

  if (raw.command.empty()) throw CliError(kExitUsage, "missing command\n\n" + usage_text(app));
  if (std::find(kCommands.begin(), kCommands.end(), raw.command) == kCommands.end()) {
    throw CliError(kExitUsage, "unknown command '" + raw.command + "'\n\n" + usage_text(app));
  }

  RunConfig c;
  c.command = raw.command;
  c.timing = raw.timing;
  if (!raw.kernel.empty()) c.kernel = raw.kernel;
  if (!raw.measure.empty()) c.measure = raw.measure;
  if (!raw.out.empty()) c.out = raw.out;
  if (!raw.target.empty()) c.target = raw.target;
  if (!raw.points.empty()) {
    // Inline objects arrive as JSON text; anything else is a descriptor.
    if (raw.points.front() == '{') {
      try {
        c.points = Json::parse(raw.points);
      } catch (const nlohmann::json::parse_error& e) {
        throw CliError(kExitInvalidValue, std::string("inline points are not valid JSON: ") + e.what());
      }
    } else {
      c.points = raw.points;
    }
  }

  // Numbers: malformed text is reported before range problems.
  if (!raw.tol.empty()) c.tol = parse_real(raw.tol, "--tol");
  if (!raw.seed.empty()) c.seed = parse_unsigned(raw.seed, "--seed");
  if (!raw.samples.empty()) c.samples = parse_unsigned(raw.samples, "--samples");
  std::int64_t level = c.level, threads = c.threads;
  if (!raw.level.empty()) level = parse_integer(raw.level, "--level");
  if (!raw.scale.empty()) c.scale = parse_real(raw.scale, "--scale");
  if (!raw.threads.empty()) threads = parse_integer(raw.threads, "--threads");
  if (!raw.shift.empty()) c.shift = parse_real(raw.shift, "--shift");
  if (!raw.terms.empty()) c.terms = parse_integer(raw.terms, "--terms");
  if (!raw.k.empty()) c.k = parse_integer(raw.k, "--k");
  if (!raw.mu1.empty()) c.mu1 = parse_real_list(raw.mu1, "--mu1");
  if (!raw.mu2.empty()) c.mu2 = parse_real_list(raw.mu2, "--mu2");
  if (!raw.phi.empty()) c.phi = parse_index_list(raw.phi, "--phi");

  if (c.tol && !(*c.tol > 0.0)) throw CliError(kExitInvalidValue, "--tol must be positive, got " + raw.tol);
  if (!(c.scale > 0.0)) throw CliError(kExitInvalidValue, "--scale must be positive, got " + raw.scale);
  if (c.samples && *c.samples == 0) throw CliError(kExitInvalidValue, "--samples must be at least 1");
  if (level < 1 || level > 8) throw CliError(kExitInvalidValue, "--level must lie in [1, 8]");
  c.level = static_cast<int>(level);
  if (threads < 1 || threads > 256) throw CliError(kExitInvalidValue, "--threads must lie in [1, 256]");
  c.threads = static_cast<unsigned>(threads);
  if (c.terms < 1 || c.terms > 10'000'000) throw CliError(kExitInvalidValue, "--terms must lie in [1, 1e7]");
  if (!raw.format.empty()) {
    if (raw.format == "json") c.format = Format::Json;
    else if (raw.format == "csv") c.format = Format::Csv;
    else throw CliError(kExitInvalidValue, "--format must be json or csv, got '" + raw.format + "'");
  }
  if (kNeedsKernel.count(c.command) && !c.kernel) {
    throw CliError(kExitMissingField, "command '" + c.command + "' needs --kernel");
  }
  return c;
}

nlohmann::ordered_json config_echo(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["kernel"] = c.kernel ? Json(*c.kernel) : Json(nullptr);
  j["measure"] = c.measure ? Json(*c.measure) : Json(nullptr);
  j["points"] = c.points ? *c.points : Json(nullptr);
  j["tol"] = c.tol ? Json(*c.tol) : Json(nullptr);
  j["seed"] = c.seed;
  j["samples"] = c.samples ? Json(*c.samples) : Json(nullptr);
  j["level"] = c.level;
  j["scale"] = c.scale;
  j["format"] = c.format == Format::Json ? "json" : "csv";
  j["threads"] = c.threads;
  j["target"] = c.target;
  j["shift"] = c.shift;
  j["terms"] = c.terms;
  j["k"] = c.k;
  j["mu1"] = c.mu1 ? Json(*c.mu1) : Json(nullptr);
  j["mu2"] = c.mu2 ? Json(*c.mu2) : Json(nullptr);
  j["phi"] = c.phi ? Json(*c.phi) : Json(nullptr);
  return j;
}

}  // namespace bspace::cli
