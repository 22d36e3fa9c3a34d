#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace chiralwalk::cli {

enum ExitCode : int { kOk = 0, kSelftestFailed = 1, kInvalidArgument = 2, kNumericalFailure = 3 };

struct RunConfig {
  std::string command;
  // chain | khalique | y | y-ring | tree
  std::string topology = "y";
  int n_sites = 200;
  double theta = 0.0;
  int depth = 2;
  std::string path = "L";

  std::string packet = "gaussian";  // gaussian | square
  std::optional<double> n0;         // default N/2
  std::optional<double> sigma;      // default N/sqrt(32)
  std::optional<int> support_lo;    // square default n0 - N/4
  std::optional<int> support_hi;    // square default n0 + N/4
  double k0 = 1.5707963267948966;
  std::optional<int> chain;         // default: 0 for trees, 3 for y-ring, 1 otherwise

  std::optional<double> t_max;      // default 2N / v_g
  double dt = 1.0;
  std::vector<double> snapshots;    // evolve: extra snapshot times
  std::string snapshot_out;

  std::string out;                  // empty: standard output
  std::string format = "csv";       // csv | json
  std::uint64_t seed = 1;
  int jobs = 1;

  int grid = 25;                    // sweep points on [-pi, pi]
  std::string mode = "both";        // numeric | analytic | both
  int theta_grid = 97;              // spectrum points on [-pi, pi]
  double omega = 1.7320508075688772;
  std::string source = "numeric";   // scatter: numeric | analytic

  bool quick = false;
  bool inject_fault = false;

  // Throws InvalidArgument.
  void validate() const;
};

// Keys mirror the long flag names with '-' replaced by '_'. Unknown keys are rejected.
RunConfig config_from_json(const std::string& text);
std::string config_to_json(const RunConfig& config);

// Jobs default: CHIRALWALK_JOBS if set to a positive integer, else 1.
int default_jobs();

// Executes one command; errors are reported on `err` and mapped to ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
};

struct SelftestOptions {
  bool quick = false;               // N = 60 subset
  bool corrupt_hamiltonian = false; // negative control for the spectral-union check
  std::uint64_t seed = 1;
};

std::vector<CheckResult> selftest(const SelftestOptions& options);

// argv front end (CLI11).
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chiralwalk::cli
