#pragma once

// The command-line subcommands as a library: each command reads its inputs,
// produces a JSON report plus named artifacts, and an exit code.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lxkit::commands {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitVerification = 3;

/// Desk-scale limits applied unless RunConfig::no_caps is set.
inline constexpr int kMaxN = 8;
inline constexpr int kMaxD = 3;

struct RunConfig {
  std::string command;
  /// Input file paths; which are required depends on the command.
  std::string input;
  std::string matroid;
  std::string p;
  std::string q;
  std::string certificate;
  /// Artifacts are written here when set.
  std::optional<std::string> output_dir;
  /// Artifact names to keep ("U", "V", "matroid", "report", "chart", "link.dot", ...); empty keeps all.
  std::vector<std::string> emit;
  std::uint64_t seed = 0;
  bool no_caps = false;
  bool inject_fault = false;
  int n = 0;
  int d = 0;
  int k = 0;
  std::optional<int> e;
  bool relabel = false;
  bool geometric = false;
  bool lattice = false;
  bool link = false;
  bool smooth = false;
  std::string a_set;
  std::string b_set;
  std::string c_set;
};

struct Artifact {
  std::string name;
  std::string content;
};

struct CommandResult {
  int exit_code = kExitOk;
  /// Printed on stdout.
  std::string report;
  std::vector<Artifact> artifacts;
};

/// Runs one command. Throws lxkit::Error for invalid input; verification
/// failures are reported through exit_code.
CommandResult run_command(const RunConfig& config);

/// Writes the artifacts into config.output_dir (created if missing).
void write_artifacts(const CommandResult& result, const RunConfig& config);

/// {"error": message} followed by a newline.
std::string error_json(const std::string& message);

const std::vector<std::string>& command_names();

}  // namespace lxkit::commands
