#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "symflow/lab.hpp"

using namespace symflow;

namespace {
std::string configDir() { return SYMFLOW_CONFIG_DIR; }

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

LabOutcome runConfig(const std::string& name, std::uint64_t seed) {
  return runLab(readFile(configDir() + "/" + name), seed, configDir());
}

const LabFile& file(const LabOutcome& o, const std::string& name) {
  for (const LabFile& f : o.files)
    if (f.name == name) return f;
  FAIL("missing output " << name);
  throw;
}

// value column of "quantity,...,value" rows
double lookup(const std::string& csv, const std::string& quantity) {
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(quantity + ",", 0) != 0) continue;
    return std::stod(line.substr(line.find_last_of(',') + 1));
  }
  FAIL("no row " << quantity);
  return NAN;
}
}  // namespace

TEST_CASE("entropy config reports the Perron value") {
  LabOutcome o = runConfig("entropy.json", 0);
  REQUIRE(o.exitCode == 0);
  const std::string& csv = file(o, "entropy.csv").contents;
  CHECK(csv.rfind("# config-hash=" + o.configHash, 0) == 0);
  CHECK(std::abs(lookup(csv, "perron") - 0.481212) < 1e-6);
  CHECK(std::abs(lookup(csv, "perron") - std::log((1 + std::sqrt(5.0)) / 2)) < 1e-9);
}

TEST_CASE("generator round trip replays byte for byte") {
  LabOutcome a = runConfig("generator_roundtrip.json", 7);
  LabOutcome b = runConfig("generator_roundtrip.json", 7);
  REQUIRE(a.exitCode == 0);
  CHECK(file(a, "generator_roundtrip.csv").contents == file(b, "generator_roundtrip.csv").contents);
  LabOutcome c = runConfig("generator_roundtrip.json", 8);
  CHECK(file(a, "generator_roundtrip.csv").contents != file(c, "generator_roundtrip.csv").contents);
  CHECK(a.configHash != c.configHash);
  // every row matched
  std::istringstream in(file(a, "generator_roundtrip.csv").contents);
  std::string line;
  int rows = 0, matched = 0;
  std::getline(in, line);
  std::getline(in, line);
  CHECK(line == "seed,n,match,recoveredLen");
  while (std::getline(in, line)) {
    ++rows;
    std::stringstream ss(line);
    std::string seed, n, match;
    std::getline(ss, seed, ',');
    std::getline(ss, n, ',');
    std::getline(ss, match, ',');
    matched += match == "1";
  }
  CHECK(rows == 100);
  CHECK(matched == 100);
}

TEST_CASE("recode-dex with p = q fails on rational independence") {
  LabOutcome o = runConfig("recode_dex_bad.json", 0);
  CHECK(o.exitCode != 0);
  CHECK(o.files.empty());
  auto j = nlohmann::json::parse(o.errorJson);
  CHECK(j.at("error") == "PreconditionFailed");
  CHECK(j.at("message").get<std::string>().find("rational independence violated") != std::string::npos);
}

TEST_CASE("malformed configs name the problem") {
  CHECK(runLab("{", 0).exitCode == 2);
  LabOutcome o = runLab(R"({"experiment":"marker","system":{"kind":"full","alphabet":2},"params":{"n":3}})", 0);
  CHECK(o.exitCode == 3);
  auto j = nlohmann::json::parse(o.errorJson);
  CHECK(j.at("error") == "NoMarkerFound");
  CHECK(j.contains("witness"));
  CHECK(runLab(R"({"experiment":"marker","system":{"kind":"full","alphabet":2}})", 0).exitCode == 2);
  CHECK(runLab(R"({"experiment":"entropy","system":"missing.json"})", 0, configDir()).exitCode == 2);
}

TEST_CASE("every shipped config runs and writes headed CSVs") {
  for (const char* name : {"entropy.json", "marker.json", "recode_dex.json", "recode_dep.json", "ocap.json",
                           "abramov.json", "kac.json", "induced.json", "periodic.json"}) {
    CAPTURE(name);
    LabOutcome o = runConfig(name, 3);
    REQUIRE(o.exitCode == 0);
    for (const LabFile& f : o.files)
      if (f.name.size() > 4 && f.name.substr(f.name.size() - 4) == ".csv")
        CHECK(f.contents.rfind("# config-hash=" + o.configHash + " seed=3\n", 0) == 0);
  }
}

TEST_CASE("outcomes are written to disk") {
  auto dir = std::filesystem::temp_directory_path() / "symflow_lab_test";
  std::filesystem::remove_all(dir);
  LabOutcome o = runConfig("kac.json", 5);
  writeLabOutcome(o, dir.string());
  CHECK(std::filesystem::exists(dir / "kac.csv"));
  LabOutcome bad = runConfig("recode_dex_bad.json", 5);
  writeLabOutcome(bad, dir.string());
  CHECK(readFile((dir / "error.json").string()).find("PreconditionFailed") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("fnv1a64 reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}
