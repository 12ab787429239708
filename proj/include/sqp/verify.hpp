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

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sqp/activations.hpp"

namespace sqp::verify {

enum class Spacing {
  Linear,
  /// Geometric magnitudes from start to stop (both > 0), mirrored to the
  /// negative side. Never contains 0.
  LogSymmetric,
};

Spacing parse_spacing(std::string_view text);
std::string_view to_string(Spacing s) noexcept;

struct GridSpec {
  double start = -20.0;
  double stop = 20.0;
  std::size_t count = 2001;
  Spacing spacing = Spacing::Linear;

  /// Throws UsageError unless start < stop and count >= 2. Log-symmetric
  /// grids additionally need 0 < start and an even count.
  void validate() const;

  /// Sample points in increasing order. Linear grids hit start and stop
  /// exactly.
  std::vector<double> points() const;
};

/// 2001 points over [-20, 20].
GridSpec default_grid();

struct VerifyReport {
  std::string check_name;
  bool passed = false;
  double worst_x = 0.0;
  std::optional<double> worst_b;
  double worst_error = 0.0;
  double tolerance = 0.0;

  /// Builds a report with passed = (worst_error <= tolerance).
  static VerifyReport make(std::string name, double worst_x, std::optional<double> worst_b,
                           double worst_error, double tolerance);
};

/// One line: "PASS name worst_x=... worst_b=... worst_error=... tolerance=...".
std::string format_report_line(const VerifyReport& r);

/// squareplus(x, b) >= softplus_stable(x) - 1e-12 on every grid point.
/// worst_error is the largest amount by which softplus exceeds squareplus
/// (0 when it never does).
VerifyReport check_bound_vs_softplus(double b, const GridSpec& grid);

/// squareplus(0, 4 ln^2 2) = ln 2, squareplus(0, 4) = 1, d2(0, 4) = 1/4, and
/// d1(0, b) = 1/2 for each listed b; each to 1e-12 absolute.
std::vector<VerifyReport> check_origin_identities(std::span<const double> b_list);

/// squareplus(x, 0) against relu(x), error measured in ulps (tolerance 1).
VerifyReport check_relu_reduction(const GridSpec& grid);

/// |squareplus(a x, b) / a - squareplus(x, b / a^2)| <= 1e-12 max(1, |x|) for
/// every a and grid point. worst_error is the scaled error.
VerifyReport check_scale_identity(std::span<const double> a_list, double b, const GridSpec& grid);

/// Central differences with step h = max(1, |x|) cbrt(eps). Returns two
/// reports: differences of squareplus against d1 (relative 1e-6) and
/// differences of d1 against d2 (relative 1e-5). With b = 0 the points with
/// |x| < 0.1 are skipped, since the kink is not differentiable.
std::vector<VerifyReport> check_gradients(double b, const GridSpec& grid);

/// Probability density of Student's t distribution with nu degrees of
/// freedom, from the gamma-function formula.
double student_t_pdf(double x, double nu);

/// squareplus_d2(x, 2) against the t(2) density, 1e-12 absolute.
VerifyReport check_student_t_pdf(const GridSpec& grid);

/// d1(x, b) = (1 + algebraic_sigmoid(x / sqrt(b))) / 2 for b > 0, 1e-14 absolute.
VerifyReport check_algebraic_sigmoid(double b, const GridSpec& grid);

/// Smallest x on the grid 0, 0.01, ..., 40 from which softplus_naive(x) - x,
/// evaluated entirely in `precision`, is exactly 0 at every remaining grid
/// point. nullopt when the difference survives to the end of the range.
std::optional<double> find_naive_breakdown(Precision precision);

/// Single-precision breakdown must land in [13, 18]. worst_error is the
/// distance outside that band (infinite when no breakdown is found).
VerifyReport check_breakdown();

/// At x_probe, squareplus sits further above relu than softplus does (and
/// softplus is strictly above relu); for x_probe < 0 the squareplus slope
/// also exceeds the logistic sigmoid. Needs b >= 4 ln^2 2 and |x_probe| >= 2,
/// otherwise throws DomainError.
VerifyReport check_slow_tail(double b, double x_probe);

/// Options a caller may override when running checks by name.
struct CheckOptions {
  /// Replaces the default b values of the b-parameterised checks.
  std::optional<double> b;
};

struct NamedCheck {
  std::string name;
  std::string description;
  /// Identifiers of the mathematical claims this check exercises.
  std::vector<std::string> claims;
  std::function<std::vector<VerifyReport>(const CheckOptions&)> run;
};

/// All checks in their default configuration, in a fixed order.
const std::vector<NamedCheck>& registry();

/// Claims that must be covered by at least one registered check.
std::vector<std::string> required_claims();

/// Runs the named checks ("all" selects every one). Throws UsageError for
/// an unknown name.
std::vector<VerifyReport> run_checks(std::span<const std::string> names,
                                     const CheckOptions& options = {});

}  // namespace sqp::verify
