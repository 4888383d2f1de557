#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace dynamix::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInput = 2,
  kExitCalibration = 3,
  kExitDegeneracy = 4,
  kExitInfeasible = 5,
};

/// Outputs of one command. Every file is declared before the first one is
/// written; commit() then writes them all plus `<command>.manifest.json`.
class RunManifest {
 public:
  RunManifest(std::string command, std::string out_dir, unsigned long long seed);

  void add_input(const std::string& path);
  void set_parameter(const std::string& key, const std::string& value);
  void declare(const std::string& relative_path, std::string content);

  const std::vector<std::string>& outputs() const noexcept { return order_; }
  std::string manifest_json() const;
  /// Writes every declared output, then the manifest. Returns written paths.
  std::vector<std::string> commit() const;

 private:
  std::string command_;
  std::string out_dir_;
  unsigned long long seed_;
  std::vector<std::string> inputs_;
  std::map<std::string, std::string> parameters_;
  std::vector<std::string> order_;
  std::map<std::string, std::string> contents_;
};

/// Entry point shared by the executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dynamix::cli
