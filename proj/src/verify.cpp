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


#include "sqp/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>

#include "sqp/csv.hpp"

namespace sqp::verify {

namespace {

constexpr double kOriginTol = 1e-12;
constexpr double kBoundSlack = 1e-12;
constexpr double kScaleTol = 1e-12;
constexpr double kGradTolD1 = 1e-6;
constexpr double kGradTolD2 = 1e-5;
constexpr double kStudentTol = 1e-12;
constexpr double kAlgebraicSigmoidTol = 1e-14;
constexpr double kBreakdownLow = 13.0;
constexpr double kBreakdownHigh = 18.0;

// Distance between two doubles in units of representable steps.
double ulp_distance(double a, double b) {
  if (a == b) return 0.0;
  if (std::isnan(a) || std::isnan(b)) return std::numeric_limits<double>::infinity();
  auto ordered = [](double v) {
    const auto bits = std::bit_cast<std::int64_t>(v);
    return bits < 0 ? std::numeric_limits<std::int64_t>::min() - bits : bits;
  };
  const auto ia = ordered(a);
  const auto ib = ordered(b);
  return static_cast<double>(ia > ib ? static_cast<std::uint64_t>(ia) - static_cast<std::uint64_t>(ib)
                                     : static_cast<std::uint64_t>(ib) - static_cast<std::uint64_t>(ia));
}

std::string with_b(std::string_view base, double b) {
  return std::string(base) + "(b=" + format_shortest(b) + ")";
}

// Tracks the worst point of a sweep.
struct Worst {
  double error = -std::numeric_limits<double>::infinity();
  double x = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> b;

  void offer(double e, double at_x, std::optional<double> at_b = std::nullopt) {
    if (e > error || std::isnan(e)) {
      error = std::isnan(e) ? std::numeric_limits<double>::infinity() : e;
      x = at_x;
      b = at_b;
    }
  }
};

double relative_error(double approx, double exact) {
  const double diff = std::abs(approx - exact);
  return exact == 0.0 ? diff : diff / std::abs(exact);
}

template <class F>
double central_difference(F&& f, double x) {
  const double h = std::max(1.0, std::abs(x)) * std::cbrt(std::numeric_limits<double>::epsilon());
  const double hi = x + h;
  const double lo = x - h;
  return (f(hi) - f(lo)) / (hi - lo);
}

std::vector<double> b_values(const CheckOptions& opt, std::initializer_list<double> defaults) {
  if (opt.b) return {*opt.b};
  return defaults;
}

}  // namespace

Spacing parse_spacing(std::string_view text) {
  if (text == "linear") return Spacing::Linear;
  if (text == "log-symmetric" || text == "log_symmetric") return Spacing::LogSymmetric;
  throw UsageError("unknown grid spacing '" + std::string(text) + "'");
}

std::string_view to_string(Spacing s) noexcept {
  return s == Spacing::Linear ? "linear" : "log-symmetric";
}

void GridSpec::validate() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop)) {
    throw UsageError("grid: need finite start < stop");
  }
  if (count < 2) throw UsageError("grid: count must be >= 2");
  if (spacing == Spacing::LogSymmetric) {
    if (!(start > 0.0)) throw UsageError("grid: log-symmetric spacing needs 0 < start");
    if (count % 2 != 0) throw UsageError("grid: log-symmetric spacing needs an even count");
  }
}

std::vector<double> GridSpec::points() const {
  validate();
  std::vector<double> xs(count);
  if (spacing == Spacing::Linear) {
    const double step = (stop - start) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) xs[i] = start + static_cast<double>(i) * step;
    xs.back() = stop;
    return xs;
  }
  const std::size_t half = count / 2;
  const double log_lo = std::log(start);
  const double log_hi = std::log(stop);
  const double step = half > 1 ? (log_hi - log_lo) / static_cast<double>(half - 1) : 0.0;
  for (std::size_t i = 0; i < half; ++i) {
    const double m = i + 1 == half ? stop : (i == 0 ? start : std::exp(log_lo + static_cast<double>(i) * step));
    xs[half + i] = m;
    xs[half - 1 - i] = -m;
  }
  return xs;
}

GridSpec default_grid() { return GridSpec{}; }

VerifyReport VerifyReport::make(std::string name, double worst_x, std::optional<double> worst_b,
                                double worst_error, double tolerance) {
  VerifyReport r;
  r.check_name = std::move(name);
  r.worst_x = worst_x;
  r.worst_b = worst_b;
  r.worst_error = worst_error;
  r.tolerance = tolerance;
  r.passed = worst_error <= tolerance;
  return r;
}

std::string format_report_line(const VerifyReport& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS " : "FAIL ") << r.check_name << " worst_x=" << format_shortest(r.worst_x);
  if (r.worst_b) os << " worst_b=" << format_shortest(*r.worst_b);
  os << " worst_error=" << format_shortest(r.worst_error)
     << " tolerance=" << format_shortest(r.tolerance);
  return os.str();
}

VerifyReport check_bound_vs_softplus(double b, const GridSpec& grid) {
  Worst worst;
  for (const double x : grid.points()) {
    worst.offer(softplus_stable(x) - squareplus(x, b), x, b);
  }
  return VerifyReport::make(with_b("softplus_upper_bound", b), worst.x, b,
                            std::max(0.0, worst.error), kBoundSlack);
}

std::vector<VerifyReport> check_origin_identities(std::span<const double> b_list) {
  std::vector<VerifyReport> out;
  const double ln2 = std::numbers::ln2;
  out.push_back(VerifyReport::make("squareplus(0,4ln^2 2)=ln2", 0.0, kBSoftplusMatch,
                                   std::abs(squareplus(0.0, kBSoftplusMatch) - ln2), kOriginTol));
  out.push_back(VerifyReport::make("squareplus(0,4)=1", 0.0, kBUnit,
                                   std::abs(squareplus(0.0, kBUnit) - 1.0), kOriginTol));
  out.push_back(VerifyReport::make("squareplus_d2(0,4)=1/4", 0.0, kBUnit,
                                   std::abs(squareplus_d2(0.0, kBUnit) - 0.25), kOriginTol));
  for (const double b : b_list) {
    out.push_back(VerifyReport::make(with_b("squareplus_d1(0)=1/2", b), 0.0, b,
                                     std::abs(squareplus_d1(0.0, b) - 0.5), kOriginTol));
  }
  return out;
}

VerifyReport check_relu_reduction(const GridSpec& grid) {
  Worst worst;
  for (const double x : grid.points()) {
    worst.offer(ulp_distance(squareplus(x, 0.0), relu(x)), x, 0.0);
  }
  return VerifyReport::make("relu_reduction", worst.x, 0.0, std::max(0.0, worst.error), 1.0);
}

VerifyReport check_scale_identity(std::span<const double> a_list, double b, const GridSpec& grid) {
  Worst worst;
  const auto xs = grid.points();
  for (const double a : a_list) {
    const double b_scaled = rescale_b(a, b);
    for (const double x : xs) {
      const double lhs = squareplus(a * x, b) / a;
      const double rhs = squareplus(x, b_scaled);
      worst.offer(std::abs(lhs - rhs) / std::max(1.0, std::abs(x)), x, b);
    }
  }
  return VerifyReport::make(with_b("scale_identity", b), worst.x, b, std::max(0.0, worst.error),
                            kScaleTol);
}

std::vector<VerifyReport> check_gradients(double b, const GridSpec& grid) {
  Worst worst_d1;
  Worst worst_d2;
  auto f = [b](double t) { return squareplus(t, b); };
  auto g = [b](double t) { return squareplus_d1(t, b); };
  for (const double x : grid.points()) {
    if (b == 0.0 && std::abs(x) < 0.1) continue;
    worst_d1.offer(relative_error(central_difference(f, x), squareplus_d1(x, b)), x, b);
    worst_d2.offer(relative_error(central_difference(g, x), squareplus_d2(x, b)), x, b);
  }
  return {VerifyReport::make(with_b("gradient_d1", b), worst_d1.x, b,
                             std::max(0.0, worst_d1.error), kGradTolD1),
          VerifyReport::make(with_b("gradient_d2", b), worst_d2.x, b,
                             std::max(0.0, worst_d2.error), kGradTolD2)};
}

double student_t_pdf(double x, double nu) {
  const double norm = std::tgamma(0.5 * (nu + 1.0)) /
                      (std::sqrt(nu * std::numbers::pi) * std::tgamma(0.5 * nu));
  return norm * std::pow(1.0 + x * x / nu, -0.5 * (nu + 1.0));
}

VerifyReport check_student_t_pdf(const GridSpec& grid) {
  Worst worst;
  for (const double x : grid.points()) {
    worst.offer(std::abs(squareplus_d2(x, 2.0) - student_t_pdf(x, 2.0)), x, 2.0);
  }
  return VerifyReport::make("student_t2_pdf", worst.x, 2.0, std::max(0.0, worst.error),
                            kStudentTol);
}

VerifyReport check_algebraic_sigmoid(double b, const GridSpec& grid) {
  if (!(b > 0.0)) throw DomainError("algebraic sigmoid check needs b > 0");
  Worst worst;
  const double scale = std::sqrt(b);
  for (const double x : grid.points()) {
    const double expected = 0.5 * (1.0 + algebraic_sigmoid(x / scale));
    worst.offer(std::abs(squareplus_d1(x, b) - expected), x, b);
  }
  return VerifyReport::make(with_b("algebraic_sigmoid_slope", b), worst.x, b,
                            std::max(0.0, worst.error), kAlgebraicSigmoidTol);
}

namespace {

// Rounding of log near the knee can produce isolated non-zero gaps just
// past the first zero, so the breakdown is the first grid point after the
// last surviving gap.
template <std::floating_point T>
std::optional<double> scan_breakdown() {
  constexpr int kSteps = 4000;
  int last_nonzero = -1;
  for (int i = 0; i <= kSteps; ++i) {
    const T xt = static_cast<T>(i * 0.01);
    if (softplus_naive(xt) - xt != T(0)) last_nonzero = i;
  }
  if (last_nonzero == kSteps) return std::nullopt;
  return (last_nonzero + 1) * 0.01;
}

}  // namespace

std::optional<double> find_naive_breakdown(Precision precision) {
  return precision == Precision::Single ? scan_breakdown<float>() : scan_breakdown<double>();
}

VerifyReport check_breakdown() {
  const auto found = find_naive_breakdown(Precision::Single);
  if (!found) {
    return VerifyReport::make("naive_softplus_breakdown(single)",
                              std::numeric_limits<double>::quiet_NaN(), std::nullopt,
                              std::numeric_limits<double>::infinity(), 0.0);
  }
  const double outside = std::max({0.0, kBreakdownLow - *found, *found - kBreakdownHigh});
  return VerifyReport::make("naive_softplus_breakdown(single)", *found, std::nullopt, outside, 0.0);
}

VerifyReport check_slow_tail(double b, double x_probe) {
  if (!(b >= kBSoftplusMatch)) throw DomainError("slow tail check needs b >= 4 ln^2 2");
  if (!(std::abs(x_probe) >= 2.0)) throw DomainError("slow tail check needs |x_probe| >= 2");

  // Each condition is "lhs > rhs"; a shortfall of d >= 0 counts as an error
  // slightly above d so that equality fails.
  double error = 0.0;
  auto require_greater = [&error](double lhs, double rhs) {
    if (!(lhs > rhs)) {
      error = std::max(error, (rhs - lhs) + std::numeric_limits<double>::denorm_min());
    }
  };
  const double relu_x = relu(x_probe);
  const double sq_gap = squareplus(x_probe, b) - relu_x;
  const double sp_gap = softplus_stable(x_probe) - relu_x;
  require_greater(sq_gap, sp_gap);
  require_greater(sp_gap, 0.0);
  if (x_probe < 0.0) {
    require_greater(squareplus_d1(x_probe, b), unchecked::sigmoid(x_probe));
  }
  return VerifyReport::make(with_b("slow_tail", b), x_probe, b, error, 0.0);
}

const std::vector<NamedCheck>& registry() {
  static const std::vector<NamedCheck> checks = [] {
    std::vector<NamedCheck> c;
    c.push_back({"origin",
                 "values and slopes at x = 0",
                 {"softplus_match_at_origin", "unit_value_at_origin", "unit_curvature_at_origin",
                  "half_slope_at_origin"},
                 [](const CheckOptions& opt) {
                   const auto bs = b_values(opt, {0.0, 1e-8, 1.0, 4.0, 1e8});
                   return check_origin_identities(bs);
                 }});
    c.push_back({"relu",
                 "b = 0 reduces to relu within 1 ulp",
                 {"relu_reduction"},
                 [](const CheckOptions&) {
                   return std::vector<VerifyReport>{check_relu_reduction(default_grid())};
                 }});
    c.push_back({"bound",
                 "upper bound on softplus for b >= 4 ln^2 2",
                 {"softplus_upper_bound"},
                 [](const CheckOptions& opt) {
                   std::vector<VerifyReport> out;
                   for (const double b : b_values(opt, {kBSoftplusMatch, kBUnit})) {
                     out.push_back(check_bound_vs_softplus(b, default_grid()));
                   }
                   return out;
                 }});
    c.push_back({"scale",
                 "input scaling is equivalent to rescaling b",
                 {"scale_reparameterization"},
                 [](const CheckOptions& opt) {
                   const double as[] = {0.5, 2.0, 3.0, 10.0};
                   std::vector<VerifyReport> out;
                   for (const double b : b_values(opt, {kBSoftplusMatch, kBUnit})) {
                     out.push_back(check_scale_identity(as, b, default_grid()));
                   }
                   return out;
                 }});
    c.push_back({"gradients",
                 "finite differences against closed-form derivatives",
                 {"first_derivative", "second_derivative"},
                 [](const CheckOptions& opt) {
                   std::vector<VerifyReport> out;
                   for (const double b : b_values(opt, {0.5, kBSoftplusMatch, kBUnit})) {
                     auto r = check_gradients(b, GridSpec{-10.0, 10.0, 401});
                     out.insert(out.end(), r.begin(), r.end());
                   }
                   return out;
                 }});
    c.push_back({"student_t",
                 "second derivative at b = 2 is the t(2) density",
                 {"student_t_density"},
                 [](const CheckOptions&) {
                   return std::vector<VerifyReport>{
                       check_student_t_pdf(GridSpec{-8.0, 8.0, 1601})};
                 }});
    c.push_back({"algebraic_sigmoid",
                 "first derivative is a shifted, scaled algebraic sigmoid",
                 {"algebraic_sigmoid_slope"},
                 [](const CheckOptions& opt) {
                   std::vector<VerifyReport> out;
                   for (const double b : b_values(opt, {0.5, kBSoftplusMatch, kBUnit})) {
                     out.push_back(check_algebraic_sigmoid(b, default_grid()));
                   }
                   return out;
                 }});
    c.push_back({"breakdown",
                 "naive single-precision softplus loses its gap to x in [13, 18]",
                 {"naive_softplus_breakdown"},
                 [](const CheckOptions&) { return std::vector<VerifyReport>{check_breakdown()}; }});
    c.push_back({"slow_tail",
                 "squareplus approaches relu, and its slope approaches 0, more slowly",
                 {"slow_tail"},
                 [](const CheckOptions& opt) {
                   std::vector<VerifyReport> out;
                   const double probes[] = {-10.0, -5.0, 2.0, 10.0};
                   for (const double b : b_values(opt, {kBSoftplusMatch, kBUnit})) {
                     for (const double x : probes) out.push_back(check_slow_tail(b, x));
                   }
                   return out;
                 }});
    return c;
  }();
  return checks;
}

std::vector<std::string> required_claims() {
  return {"relu_reduction",          "softplus_match_at_origin", "softplus_upper_bound",
          "unit_curvature_at_origin", "unit_value_at_origin",     "half_slope_at_origin",
          "scale_reparameterization", "first_derivative",         "second_derivative",
          "student_t_density",        "naive_softplus_breakdown"};
}

std::vector<VerifyReport> run_checks(std::span<const std::string> names, const CheckOptions& options) {
  const auto& checks = registry();
  std::vector<const NamedCheck*> selected;
  for (const auto& name : names) {
    if (name == "all") {
      for (const auto& c : checks) selected.push_back(&c);
      continue;
    }
    const auto it = std::find_if(checks.begin(), checks.end(),
                                 [&](const NamedCheck& c) { return c.name == name; });
    if (it == checks.end()) throw UsageError("unknown check '" + name + "'");
    selected.push_back(&*it);
  }
  std::vector<VerifyReport> reports;
  for (const NamedCheck* c : selected) {
    auto r = c->run(options);
    reports.insert(reports.end(), r.begin(), r.end());
  }
  return reports;
}

}  // namespace sqp::verify
