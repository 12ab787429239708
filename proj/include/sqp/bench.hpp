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

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sqp/activations.hpp"

namespace sqp::bench {

struct InputRange {
  double low = -5.0;
  double high = 5.0;
};

struct BenchConfig {
  std::vector<Activation> activations = table_activations();
  std::size_t n = 1'000'000;
  std::size_t reps = 50;
  std::size_t warmup = 5;
  Precision precision = Precision::Double;
  InputRange input;
  std::uint64_t seed = 1234;
  /// Use the multi-threaded kernel path. Off by default so per-element
  /// timings are stable.
  bool parallel = false;

  /// Throws UsageError unless n > 0, reps > 0, low < high and the activation
  /// list is non-empty.
  void validate() const;
};

/// One row of the runtime comparison. Times are per element of one pass.
struct BenchRecord {
  std::string activation_name;
  Precision precision = Precision::Double;
  std::size_t n = 0;
  std::size_t reps = 0;
  double median_ns_per_elem = 0.0;
  double min_ns_per_elem = 0.0;
  /// Sum of the output buffer after the last timed pass.
  double checksum = 0.0;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

/// The pseudo-random input every activation in a run consumes: n uniform
/// draws from [low, high) with the configured seed.
template <std::floating_point T>
std::vector<T> make_input(const BenchConfig& config);

/// Times each activation over the same input buffer: `warmup` untimed
/// passes, then `reps` timed ones. Records come back slowest first (by
/// median). Warnings, such as a coarse clock, go to `log` when non-null.
///
/// Only one benchmark should run per process at a time; concurrent runs
/// distort each other's timings.
///
/// Throws ResourceError when the buffers cannot be allocated.
std::vector<BenchRecord> run_bench(const BenchConfig& config, std::ostream* log = nullptr);

enum class ReportFormat { Table, Csv, Json };

ReportFormat parse_report_format(std::string_view text);

inline constexpr std::string_view kCsvHeader =
    "name,precision,n,reps,median_ns_per_elem,min_ns_per_elem,checksum";

/// Csv and Json keep the record order so they parse back to the same list.
/// Table is for people and is always sorted by median, slowest first.
std::string format_report(std::span<const BenchRecord> records, ReportFormat format);

/// Inverse of format_report(..., Csv).
std::vector<BenchRecord> parse_csv_report(std::string_view text);

}  // namespace sqp::bench
