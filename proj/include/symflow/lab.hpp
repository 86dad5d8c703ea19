#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace symflow {

struct LabFile {
  std::string name;
  std::string contents;
};

struct LabOutcome {
  int exitCode = 0;  // 0 ok, 2 bad config, 3 violated precondition, 1 other
  std::string experiment;
  std::string configHash;  // fnv1a64 of the canonical config and the seed, hex
  std::vector<LabFile> files;
  std::string errorJson;  // {"error": code, "message": text}; empty on success
  std::string outDir;     // "out" of the config, may be empty
};

// Pure: parses the config, runs the experiment and renders the files.
// Relative file names for systems and measures resolve against baseDir.
LabOutcome runLab(const std::string& configJson, std::uint64_t seed, const std::string& baseDir = ".");

// Writes the files (or error.json) into dir, creating it.
void writeLabOutcome(const LabOutcome& outcome, const std::string& dir);

const std::vector<std::string>& labExperiments();

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace symflow
