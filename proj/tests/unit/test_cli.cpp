#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "config.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace bspace::cli;
using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "bspace");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

Json json_of(const Run& r) { return Json::parse(r.out); }

double scalar(const Run& r, const std::string& name) { return json_of(r)["scalars"][name].get<double>(); }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("bspace_test_" + name);
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"factorize", "--bogus", "1"}).code == kExitUsage);
  CHECK(cli({"frobnicate", "--kernel", "szego"}).code == kExitUsage);
}

TEST_CASE("help and version exit 0") {
  const Run h = cli({"--help"});
  CHECK(h.code == kExitPass);
  CHECK(h.out.find("Exit codes") != std::string::npos);
  const Run v = cli({"--version"});
  CHECK(v.code == kExitPass);
  CHECK(v.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("value errors map to their exit codes") {
  CHECK(cli({"factorize", "--kernel", "szego", "--tol", "-1"}).code == kExitInvalidValue);
  CHECK(cli({"factorize", "--kernel", "szego", "--tol", "1e-x"}).code == kExitMalformedNumber);
  CHECK(cli({"factorize", "--kernel", "szego", "--seed", "12abc"}).code == kExitMalformedNumber);
  CHECK(cli({"factorize"}).code == kExitMissingField);
  CHECK(cli({"factorize", "--kernel", "nope"}).code == kExitInvalidValue);
  CHECK(cli({"factorize", "--kernel", "szego", "--format", "xml"}).code == kExitInvalidValue);
  CHECK(cli({"cantor-onb", "--level", "9"}).code == kExitInvalidValue);
  CHECK(cli({"factorize", "--kernel", "szego", "--points", "/nonexistent/points.json"}).code == kExitIo);
  // A point outside the disk is a domain error.
  const std::string outside = R"({"domain": "complex", "points": [[0.1, 0], [1.5, 0]]})";
  CHECK(cli({"factorize", "--kernel", "szego", "--points", outside}).code == kExitInvalidValue);
}

TEST_CASE("factorize passes for every zoo kernel") {
  for (const char* k : {"szego", "bargmann", "cantor", "sinc"}) {
    INFO(k);
    const Run r = cli({"factorize", "--kernel", k});
    CHECK(r.code == kExitPass);
    CHECK(json_of(r)["outcome"] == "member");
  }
}

TEST_CASE("carleson constant of a member and of a scaled member") {
  const Run one = cli({"carleson", "--kernel", "szego"});
  CHECK(one.code == kExitPass);
  CHECK(scalar(one, "carleson_constant") == doctest::Approx(1.0).epsilon(1e-8));

  const Run two = cli({"carleson", "--kernel", "szego", "--scale", "2"});
  CHECK(two.code == kExitVerdictFail);
  CHECK(json_of(two)["outcome"] == "non-member");
  CHECK(std::abs(scalar(two, "carleson_constant") - 2.0) < 1e-8);
}

TEST_CASE("gp covariance defect on the sinc grid") {
  const Run r = cli({"gp", "--kernel", "sinc", "--points", "grid5", "--samples", "100000"});
  CHECK(r.code == kExitPass);
  CHECK(scalar(r, "covariance_defect") < 0.05);
}

TEST_CASE("cantor-onb level 6") {
  const Run r = cli({"cantor-onb", "--level", "6"});
  CHECK(r.code == kExitPass);
  const Json j = json_of(r);
  CHECK(j["tables"]["lambda4"]["rows"].size() == 64);
  CHECK(j["tables"]["parseval"]["rows"].size() == 12);
}

TEST_CASE("project reports an antitone residual sequence") {
  const Run r = cli({"project", "--kernel", "szego"});
  CHECK(r.code == kExitPass);
  CHECK(scalar(r, "residual") == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("shannon and morphism pass with defaults") {
  CHECK(cli({"shannon"}).code == kExitPass);
  CHECK(cli({"morphism"}).code == kExitPass);
  // Weights that do not match the pushforward are not a morphism.
  const Run bad = cli({"morphism", "--mu1", "0.3,0.7"});
  CHECK(bad.code == kExitVerdictFail);
  CHECK(json_of(bad)["outcome"] == "not-a-morphism");
}

TEST_CASE("reports are byte-identical across runs") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"isometry", "--kernel", "bargmann", "--seed", "9"},
        std::vector<std::string>{"gp", "--kernel", "szego", "--samples", "5000"},
        std::vector<std::string>{"pd-check", "--kernel", "cantor", "--format", "csv"}}) {
    INFO(args[0]);
    const Run a = cli(args);
    const Run b = cli(args);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }
}

TEST_CASE("thread count does not change the report") {
  const Run a = cli({"factorize", "--kernel", "szego", "--threads", "1"});
  const Run b = cli({"factorize", "--kernel", "szego", "--threads", "4"});
  auto strip = [](Json j) {
    j["config"].erase("threads");
    return j;
  };
  CHECK(strip(json_of(a)) == strip(json_of(b)));
}

TEST_CASE("duration is reported only on request") {
  CHECK_FALSE(json_of(cli({"shannon"})).contains("duration_seconds"));
  CHECK(json_of(cli({"shannon", "--timing"})).contains("duration_seconds"));
}

TEST_CASE("csv layout") {
  const Run r = cli({"pd-check", "--kernel", "sinc", "--format", "csv"});
  CHECK(r.code == kExitPass);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# bspace", 0) == 0);
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  std::size_t eigen_rows = 0;
  bool in_eigen = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].rfind("# table: ", 0) == 0) {
      in_eigen = lines[i] == "# table: eigenvalues";
      if (in_eigen) CHECK(lines[i + 1] == "index,eigenvalue");
      ++i;
      continue;
    }
    if (in_eigen) ++eigen_rows;
  }
  CHECK(eigen_rows == 5);
  CHECK(r.out.find(",-0,") == std::string::npos);
}

TEST_CASE("config file merges under flags") {
  const auto path = temp_file("config.json");
  {
    std::ofstream f(path);
    f << R"({"kernel": "szego", "points": "disk:4:0.5", "samples": 7})";
  }
  const Run r = cli({"isometry", "--config", path.string(), "--seed", "3"});
  CHECK(r.code == kExitPass);
  const Json j = json_of(r);
  CHECK(j["scalars"]["trials"] == 7);
  CHECK(j["resolved"]["section_size"] == 4);
  CHECK(j["config"]["seed"] == 3);

  const Run flag = cli({"isometry", "--config", path.string(), "--samples", "2"});
  CHECK(json_of(flag)["scalars"]["trials"] == 2);

  {
    std::ofstream f(path);
    f << R"({"kernel": "szego", "colour": "blue"})";
  }
  CHECK(cli({"isometry", "--config", path.string()}).code == kExitUsage);
  std::filesystem::remove(path);
}

TEST_CASE("--out writes the report to a file") {
  const auto path = temp_file("report.json");
  const Run r = cli({"shannon", "--out", path.string()});
  CHECK(r.code == kExitPass);
  CHECK(r.out.empty());
  CHECK(Json::parse(read_file(path))["command"] == "shannon");
  std::filesystem::remove(path);
  CHECK(cli({"shannon", "--out", "/nonexistent/dir/report.json"}).code == kExitIo);
}

TEST_CASE("inline points and explicit kernels") {
  const auto path = temp_file("gram.json");
  {
    std::ofstream f(path);
    f << R"({"gram": [[2, 1], [1, 2]]})";
  }
  const Run r = cli({"factorize", "--kernel", "gram:" + path.string()});
  CHECK(r.code == kExitPass);
  std::filesystem::remove(path);

  const std::string pts = R"({"domain": "real", "points": [-1.5, 0.25, 2]})";
  CHECK(cli({"adjoint-roundtrip", "--kernel", "sinc", "--points", pts}).code == kExitPass);
}

#ifdef BSPACE_CLI_PATH
TEST_CASE("the installed binary is deterministic") {
  auto capture = [](const std::string& args) {
    const std::string cmd = std::string(BSPACE_CLI_PATH) + " " + args;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    CHECK(status == 0);
    return out;
  };
  const std::string a = capture("carleson --kernel bargmann --threads 1");
  CHECK(a == capture("carleson --kernel bargmann --threads 1"));
  CHECK(a == cli({"carleson", "--kernel", "bargmann", "--threads", "1"}).out);
}
#endif
