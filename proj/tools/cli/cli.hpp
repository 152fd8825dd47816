#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace hurwitz::cli {

enum ExitCode : int {
  kCertified = 0,
  kFailure = 1,
  kUsage = 2,
  kRefused = 3,
  kCandidate = 10,
  kTimeout = 20,
};

/// Settings of one invocation. The seed is recorded in every witness.
struct RunConfig {
  std::string command;
  std::string family;
  std::uint64_t q = 0;
  std::string kind;
  std::string type;
  int order = 7;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::uint64_t max_iterations = 0;
  double seconds = 0;
  std::uint64_t chunk = 4096;
  std::string conjugate = "x";
  bool certify = true;
  std::uint64_t certify_words = 20000;
  double certify_seconds = 0;
  std::filesystem::path cache_dir;
  std::filesystem::path out;
  std::filesystem::path witness;
};

/// Cache directory from HURWITZ_CACHE_DIR, empty when unset.
std::filesystem::path default_cache_dir();

int cmd_admissible(const RunConfig& cfg, std::ostream& out);
int cmd_tables(const RunConfig& cfg, std::ostream& out);
int cmd_torus_bounds(const RunConfig& cfg, std::ostream& out);
int cmd_build(const RunConfig& cfg, std::ostream& out);
int cmd_hunt(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses arguments (argv[0] is the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hurwitz::cli
