#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qcorr::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kInvalidFile = 2,
  kUnknownName = 3,
  kDimensionMismatch = 4,
};

struct RunConfig {
  std::string command;
  std::string name;  // measure, or catalog entry
  std::string state_path;
  std::string povm_path;
  std::vector<std::string> suites;
  std::vector<std::uint64_t> seeds;
  int trials = 0;  // seeds 1..trials when no --seed is given
  int budget = 20000;
  int restarts = 32;
  double gap_tol = 1e-3;
  std::string out_path;
  std::string format = "text";  // json | text (standard output)
  std::vector<std::string> keep;
  std::string measured;
  std::optional<double> p;
  std::vector<int> dims;
  int rank = 0;
  int cap = 0;
};

const std::vector<std::string>& measure_names();

/// Each command writes its report to cfg.out_path (JSON) when set and a summary to `out`;
/// errors go to `err`. The return value is the process exit code.
int cmd_compute(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_catalog(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace qcorr::cli
