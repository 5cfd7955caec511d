#pragma once

// Command dispatch behind the `sharpwave` executable. Argument parsing lives
// in the tool; everything here is callable from tests.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sharpwave/experiments.hpp"
#include "sharpwave/report.hpp"

namespace sharpwave {

struct RunConfig {
  std::string command;  // constants lemma31 lorentz verify radial sphere counterexample search all
  int dim = 3;
  double beta = 0.0;
  std::string mode = "pm";
  std::string data = "foschi";
  std::optional<double> tol;  // default: 1e-6 for lemma31, 1e-3 otherwise
  int nodes = 32;
  std::uint64_t seed = 7;
  std::string out;  // empty: stdout
  std::string format = "json";
  int samples = 0;  // pairs (lemma31), boosts (lorentz); 0 picks the default
  int budget = 500;
  int params = 4;
  bool timing = false;  // keep runtime_ms; off by default so output is reproducible
  std::vector<int> dims;       // constants: extra dimensions
  std::vector<double> betas;   // constants: extra betas
};

/// Exit codes.
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2, kExitInconclusive = 3 };

struct RunResult {
  int exit_code = kExitPass;
  std::vector<VerificationReport> reports;
  std::vector<ScanResult> scans;
  std::vector<ConstantEntry> constants;
  std::string error;  // set when the command could not run
};

/// 1 if any report failed, else 3 if any is inconclusive, else 0.
int exit_status(const std::vector<VerificationReport>& reports);

RunResult run(const RunConfig& config);

/// Serialised main output of a run in the configured format.
std::string render(const RunResult& result, const RunConfig& config);

/// Table rows of "all": one line per report with its status.
std::string summary_matrix(const std::vector<VerificationReport>& reports);

/// Resolves --out against SHARPWAVE_OUT_DIR; empty means stdout. When the
/// variable is set and --out is empty, "<command>.<format>" inside it.
std::string resolve_output_path(const RunConfig& config);

/// Writes render() to the output path (or stdout) and, for counterexample,
/// one "<dir>/counterexample_<name>.csv" per scan when a directory is known.
/// Returns the exit code, downgraded to 1 on I/O failure.
int write_outputs(const RunResult& result, const RunConfig& config);

}  // namespace sharpwave
