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


#include "sqp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <limits>
#include <new>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "sqp/csv.hpp"
#include "sqp/kernels.hpp"

namespace sqp::bench {

namespace {

using Clock = std::chrono::steady_clock;

// Keeps the optimizer from treating the buffer as dead after a pass.
inline void escape(const void* p) { asm volatile("" : : "g"(p) : "memory"); }

double clock_resolution_ns() {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 5; ++i) {
    const auto t0 = Clock::now();
    auto t1 = Clock::now();
    while (t1 == t0) t1 = Clock::now();
    best = std::min(best, std::chrono::duration<double, std::nano>(t1 - t0).count());
  }
  return best;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

template <std::floating_point T>
std::vector<T> allocate(std::size_t n, std::string_view what) {
  if (n > std::numeric_limits<std::size_t>::max() / sizeof(T)) {
    throw ResourceError("bench: " + std::string(what) + " buffer size overflows");
  }
  try {
    return std::vector<T>(n);
  } catch (const std::bad_alloc&) {
    throw ResourceError("bench: cannot allocate " + std::to_string(n * sizeof(T)) +
                        " bytes for the " + std::string(what) + " buffer");
  } catch (const std::length_error&) {
    throw ResourceError("bench: cannot allocate " + std::to_string(n * sizeof(T)) +
                        " bytes for the " + std::string(what) + " buffer");
  }
}

template <std::floating_point T>
std::vector<BenchRecord> run_typed(const BenchConfig& config, std::ostream* log) {
  const std::vector<T> input = make_input<T>(config);
  std::vector<T> output = allocate<T>(config.n, "output");
  const std::span<const T> in(input);
  const std::span<T> out(output);

  kernels::ExecPolicy policy;
  policy.parallel = config.parallel;

  const double resolution = clock_resolution_ns();
  std::vector<BenchRecord> records;
  records.reserve(config.activations.size());
  std::vector<double> times(config.reps);

  for (const Activation& act : config.activations) {
    for (std::size_t w = 0; w < config.warmup; ++w) {
      kernels::apply<T>(act, kernels::KernelMode::Value, in, out, {}, policy);
      escape(output.data());
    }
    for (std::size_t r = 0; r < config.reps; ++r) {
      const auto t0 = Clock::now();
      kernels::apply<T>(act, kernels::KernelMode::Value, in, out, {}, policy);
      escape(output.data());
      const auto t1 = Clock::now();
      times[r] = std::chrono::duration<double, std::nano>(t1 - t0).count();
    }

    BenchRecord rec;
    rec.activation_name = act.name();
    rec.precision = config.precision;
    rec.n = config.n;
    rec.reps = config.reps;
    const double n = static_cast<double>(config.n);
    rec.min_ns_per_elem = *std::min_element(times.begin(), times.end()) / n;
    rec.median_ns_per_elem = median_of(times) / n;
    rec.checksum = kernels::checksum<T>(out);

    if (log && resolution > 0.01 * rec.min_ns_per_elem * n) {
      *log << "warning: clock resolution " << resolution << " ns exceeds 1% of one "
           << rec.activation_name << " pass (" << rec.min_ns_per_elem * n << " ns)\n";
    }
    records.push_back(std::move(rec));
  }

  std::stable_sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
    return a.median_ns_per_elem > b.median_ns_per_elem;
  });
  return records;
}

std::string table_report(std::span<const BenchRecord> records) {
  std::vector<BenchRecord> sorted(records.begin(), records.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const BenchRecord& a, const BenchRecord& b) {
    return a.median_ns_per_elem > b.median_ns_per_elem;
  });

  std::size_t name_width = 10;
  for (const auto& r : sorted) name_width = std::max(name_width, r.activation_name.size());

  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(name_width)) << "activation" << std::right
     << std::setw(8) << "prec" << std::setw(10) << "n" << std::setw(6) << "reps" << std::setw(14)
     << "median ns/el" << std::setw(14) << "min ns/el" << std::setw(12) << "median ms" << "  "
     << "checksum\n";
  for (const auto& r : sorted) {
    os << std::left << std::setw(static_cast<int>(name_width)) << r.activation_name << std::right
       << std::setw(8) << to_string(r.precision) << std::setw(10) << r.n << std::setw(6) << r.reps
       << std::fixed << std::setprecision(4) << std::setw(14) << r.median_ns_per_elem
       << std::setw(14) << r.min_ns_per_elem << std::setprecision(3) << std::setw(12)
       << r.median_ns_per_elem * static_cast<double>(r.n) * 1e-6 << "  "
       << std::defaultfloat << std::setprecision(9) << r.checksum << '\n';
  }
  return os.str();
}

std::string csv_report(std::span<const BenchRecord> records) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& r : records) {
    const std::string checksum = r.precision == Precision::Single
                                     ? format_real(static_cast<float>(r.checksum))
                                     : format_real(r.checksum);
    const std::string fields[] = {r.activation_name,
                                  std::string(to_string(r.precision)),
                                  std::to_string(r.n),
                                  std::to_string(r.reps),
                                  format_real(r.median_ns_per_elem),
                                  format_real(r.min_ns_per_elem),
                                  checksum};
    write_csv_row(os, fields);
  }
  return os.str();
}

std::string json_report(std::span<const BenchRecord> records) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : records) {
    rows.push_back({{"name", r.activation_name},
                    {"precision", std::string(to_string(r.precision))},
                    {"n", r.n},
                    {"reps", r.reps},
                    {"median_ns_per_elem", r.median_ns_per_elem},
                    {"min_ns_per_elem", r.min_ns_per_elem},
                    {"checksum", r.checksum}});
  }
  return rows.dump(2) + "\n";
}

std::size_t parse_count(const std::string& text) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (text.empty() || pos != text.size() || text.front() == '-') {
    throw UsageError("not a count: '" + text + "'");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

void BenchConfig::validate() const {
  if (activations.empty()) throw UsageError("bench: no activations selected");
  if (n == 0) throw UsageError("bench: n must be > 0");
  if (reps == 0) throw UsageError("bench: reps must be > 0");
  if (!(input.low < input.high) || !std::isfinite(input.low) || !std::isfinite(input.high)) {
    throw UsageError("bench: input range needs finite low < high");
  }
}

template <std::floating_point T>
std::vector<T> make_input(const BenchConfig& config) {
  std::vector<T> input = allocate<T>(config.n, "input");
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> dist(config.input.low, config.input.high);
  for (T& v : input) v = static_cast<T>(dist(rng));
  return input;
}

template std::vector<float> make_input<float>(const BenchConfig&);
template std::vector<double> make_input<double>(const BenchConfig&);

std::vector<BenchRecord> run_bench(const BenchConfig& config, std::ostream* log) {
  config.validate();
  return config.precision == Precision::Single ? run_typed<float>(config, log)
                                               : run_typed<double>(config, log);
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "table") return ReportFormat::Table;
  if (text == "csv") return ReportFormat::Csv;
  if (text == "json") return ReportFormat::Json;
  throw UsageError("unknown report format '" + std::string(text) + "'");
}

std::string format_report(std::span<const BenchRecord> records, ReportFormat format) {
  switch (format) {
    case ReportFormat::Table:
      return table_report(records);
    case ReportFormat::Csv:
      return csv_report(records);
    case ReportFormat::Json:
      return json_report(records);
  }
  return {};
}

std::vector<BenchRecord> parse_csv_report(std::string_view text) {
  const CsvTable table = parse_csv(text);
  std::string header;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) header += ',';
    header += table.header[i];
  }
  if (header != kCsvHeader) throw UsageError("bench CSV: unexpected header '" + header + "'");

  std::vector<BenchRecord> records;
  records.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    BenchRecord r;
    r.activation_name = row[0];
    r.precision = parse_precision(row[1]);
    r.n = parse_count(row[2]);
    r.reps = parse_count(row[3]);
    r.median_ns_per_elem = parse_real(row[4]);
    r.min_ns_per_elem = parse_real(row[5]);
    r.checksum = parse_real(row[6]);
    // Single-precision sums are written with 9 digits, which identify the
    // float but not the double nearest to the decimal text.
    if (r.precision == Precision::Single) r.checksum = static_cast<float>(r.checksum);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace sqp::bench
