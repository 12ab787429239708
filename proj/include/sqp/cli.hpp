// Copyright 2026 The Squareplus Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sqp/activations.hpp"
#include "sqp/bench.hpp"
#include "sqp/verify.hpp"

namespace sqp::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitUsage = 2,
  kExitIo = 3,
};

/// One "x,value,d1,d2" line per input. The derivative fields are left empty
/// for activations without a closed-form second derivative.
std::string cmd_eval(const Activation& act, std::span<const double> xs,
                     Precision precision = Precision::Double);

/// Function and derivative curves: softplus, then squareplus for each b.
std::string figure1_csv(const verify::GridSpec& grid, std::span<const double> b_values);

/// Gaps to relu: stable softplus, naive softplus in single precision, then
/// squareplus for each b.
std::string figure2_csv(const verify::GridSpec& grid, std::span<const double> b_values);

/// Writes fig1.csv and fig2.csv into `out_dir` (created if missing).
/// Throws IoError when a file cannot be written.
void cmd_figures(const verify::GridSpec& grid, std::span<const double> b_values,
                 const std::filesystem::path& out_dir);

struct VerifyOutcome {
  int exit_code = kExitOk;
  std::string text;
};

/// Runs the named checks and prints one report line each. Exit code 0 only
/// when every report passes.
VerifyOutcome cmd_verify(std::span<const std::string> names,
                         const verify::CheckOptions& options = {});

std::string cmd_bench(const bench::BenchConfig& config, bench::ReportFormat format,
                      std::ostream* log = nullptr);

/// Full command line entry point. `args` excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace sqp::cli
