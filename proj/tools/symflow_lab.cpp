// Experiment runner; links only the C API.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "symflow/symflow.h"

namespace {

std::string parentDir(const std::string& path) {
  auto pos = path.find_last_of('/');
  return pos == std::string::npos ? "." : path.substr(0, pos == 0 ? 1 : pos);
}

void printError(const std::string& code, const std::string& message) {
  std::cerr << nlohmann::json{{"error", code}, {"message", message}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batch runner for symbolic flow experiments"};
  std::string configPath, outDir, experiment;
  std::uint64_t seed = 0;
  bool list = false;
  app.add_option("experiment", experiment, "experiment name; must agree with the config when both are given");
  app.add_option("--config", configPath, "experiment config (JSON)");
  app.add_option("--seed", seed, "seed for every random choice");
  app.add_option("--out", outDir, "output directory; beats SYMFLOW_OUT and the config's \"out\"");
  app.add_flag("--list", list, "list experiment names");
  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (size_t i = 0; i < sf_lab_experiment_count(); ++i) std::cout << sf_lab_experiment_name(i) << "\n";
    return 0;
  }
  if (configPath.empty()) {
    printError("InvalidArgument", "--config is required");
    return 2;
  }
  std::ifstream in(configPath);
  if (!in) {
    printError("Io", "cannot read '" + configPath + "'");
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  std::string config = buf.str();
  if (!experiment.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(config);
    } catch (const std::exception& e) {
      printError("Parse", e.what());
      return 2;
    }
    if (j.contains("experiment") && j.at("experiment") != experiment) {
      printError("InvalidArgument", "config runs '" + j.at("experiment").get<std::string>() + "', not '" + experiment + "'");
      return 2;
    }
    j["experiment"] = experiment;
    config = j.dump();
  }

  sf_lab_result* result = nullptr;
  sf_status st = sf_lab_run(config.c_str(), seed, parentDir(configPath).c_str(), nullptr, &result);
  if (!result) {
    printError(sf_status_name(st), sf_last_error());
    return 1;
  }
  int code = sf_lab_result_exit_code(result);
  std::string dir = outDir;
  if (dir.empty())
    if (const char* env = std::getenv("SYMFLOW_OUT"); env && *env) dir = env;
  if (dir.empty()) dir = sf_lab_result_out_dir(result);
  if (dir.empty()) dir = ".";
  if (sf_lab_result_write(result, dir.c_str()) != SF_OK) {
    printError("Io", sf_last_error());
    sf_lab_result_free(result);
    return 1;
  }
  if (code != 0) {
    std::cerr << sf_lab_result_error_json(result) << "\n";
  } else {
    for (size_t i = 0; i < sf_lab_result_file_count(result); ++i)
      std::cout << dir << "/" << sf_lab_result_file_name(result, i) << "\n";
  }
  sf_lab_result_free(result);
  return code;
}
