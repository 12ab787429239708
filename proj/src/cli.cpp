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


#include "sqp/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "sqp/csv.hpp"

namespace sqp::cli {

namespace {

template <std::floating_point T>
void eval_lines(const Activation& act, std::span<const double> xs, std::ostream& os) {
  for (const double xd : xs) {
    const T x = static_cast<T>(xd);
    std::string fields[4] = {format_real(x), format_real(act.value(x)), "", ""};
    if (act.has_second_derivative()) {
      fields[2] = format_real(act.d1(x));
      fields[3] = format_real(*act.d2(x));
    }
    write_csv_row(os, fields);
  }
}

std::string b_label(double b) { return "squareplus_b" + format_shortest(b); }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f << text;
  f.flush();
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

std::string cmd_eval(const Activation& act, std::span<const double> xs, Precision precision) {
  std::ostringstream os;
  if (precision == Precision::Single) {
    eval_lines<float>(act, xs, os);
  } else {
    eval_lines<double>(act, xs, os);
  }
  return os.str();
}

std::string figure1_csv(const verify::GridSpec& grid, std::span<const double> b_values) {
  for (const double b : b_values) Squareplus{b};  // validates
  std::ostringstream os;
  std::vector<std::string> fields = {"x", "softplus", "softplus_d1", "softplus_d2"};
  for (const double b : b_values) {
    const std::string label = b_label(b);
    fields.push_back(label);
    fields.push_back(label + "_d1");
    fields.push_back(label + "_d2");
  }
  write_csv_row(os, fields);

  const Activation softplus = SoftplusStable{};
  for (const double x : grid.points()) {
    fields.clear();
    fields.push_back(format_real(x));
    fields.push_back(format_real(softplus.value(x)));
    fields.push_back(format_real(softplus.d1(x)));
    fields.push_back(format_real(*softplus.d2(x)));
    for (const double b : b_values) {
      fields.push_back(format_real(squareplus(x, b)));
      fields.push_back(format_real(squareplus_d1(x, b)));
      fields.push_back(format_real(squareplus_d2(x, b)));
    }
    write_csv_row(os, fields);
  }
  return os.str();
}

std::string figure2_csv(const verify::GridSpec& grid, std::span<const double> b_values) {
  for (const double b : b_values) Squareplus{b};
  std::ostringstream os;
  std::vector<std::string> fields = {"x", "softplus_minus_relu",
                                     "softplus_naive_single_minus_relu"};
  for (const double b : b_values) fields.push_back(b_label(b) + "_minus_relu");
  write_csv_row(os, fields);

  for (const double x : grid.points()) {
    const float xf = static_cast<float>(x);
    const double r = relu(x);
    fields.clear();
    fields.push_back(format_real(x));
    fields.push_back(format_real(softplus_stable(x) - r));
    fields.push_back(format_real(softplus_naive(xf) - relu(xf)));
    for (const double b : b_values) fields.push_back(format_real(squareplus(x, b) - r));
    write_csv_row(os, fields);
  }
  return os.str();
}

void cmd_figures(const verify::GridSpec& grid, std::span<const double> b_values,
                 const std::filesystem::path& out_dir) {
  const std::string fig1 = figure1_csv(grid, b_values);
  const std::string fig2 = figure2_csv(grid, b_values);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create '" + out_dir.string() + "': " + ec.message());
  write_file(out_dir / "fig1.csv", fig1);
  write_file(out_dir / "fig2.csv", fig2);
}

VerifyOutcome cmd_verify(std::span<const std::string> names, const verify::CheckOptions& options) {
  const auto reports = verify::run_checks(names, options);
  VerifyOutcome outcome;
  std::ostringstream os;
  bool all_passed = true;
  for (const auto& r : reports) {
    os << verify::format_report_line(r) << '\n';
    all_passed = all_passed && r.passed;
  }
  os << (all_passed ? "all " : "some checks failed; ") << reports.size() << " reports, "
     << (all_passed ? "all passed" : "see FAIL lines") << '\n';
  outcome.text = os.str();
  outcome.exit_code = all_passed ? kExitOk : kExitVerifyFailed;
  return outcome;
}

std::string cmd_bench(const bench::BenchConfig& config, bench::ReportFormat format,
                      std::ostream* log) {
  const auto records = bench::run_bench(config, log);
  return bench::format_report(records, format);
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rectifier activations: evaluate, benchmark, emit figure data, verify"};
  app.require_subcommand(1, 1);

  // eval
  std::string eval_act = "squareplus";
  std::optional<double> eval_b;
  std::optional<double> eval_alpha;
  std::string eval_precision = "double";
  std::vector<double> eval_xs;
  auto* eval = app.add_subcommand("eval", "Print x,value,d1,d2 for each input");
  eval->add_option("-a,--activation", eval_act, "relu, softplus, softplus_naive, elu, swish, squareplus")
      ->capture_default_str();
  eval->add_option("--b", eval_b, "squareplus b (default 4)");
  eval->add_option("--alpha", eval_alpha, "elu alpha (default 1)");
  eval->add_option("--precision", eval_precision, "single or double")->capture_default_str();
  eval->add_option("xs", eval_xs, "Input values")->required();

  // bench
  bench::BenchConfig bench_cfg;
  std::vector<std::string> bench_acts;
  std::string bench_precision = "double";
  std::string bench_format = "table";
  auto* bench_cmd = app.add_subcommand("bench", "Time every activation kernel");
  bench_cmd->add_option("--n", bench_cfg.n, "Elements per pass")->capture_default_str();
  bench_cmd->add_option("--reps", bench_cfg.reps, "Timed passes")->capture_default_str();
  bench_cmd->add_option("--warmup", bench_cfg.warmup, "Untimed passes")->capture_default_str();
  bench_cmd->add_option("--precision", bench_precision, "single or double")->capture_default_str();
  bench_cmd->add_option("--format", bench_format, "table, csv or json")->capture_default_str();
  bench_cmd->add_option("--seed", bench_cfg.seed, "Input RNG seed")->capture_default_str();
  bench_cmd->add_option("--low", bench_cfg.input.low, "Input range low")->capture_default_str();
  bench_cmd->add_option("--high", bench_cfg.input.high, "Input range high")->capture_default_str();
  bench_cmd->add_option("--activation", bench_acts, "Activation to time (repeatable)");
  bench_cmd->add_flag("--parallel", bench_cfg.parallel, "Use the multi-threaded kernel path");

  // figures
  verify::GridSpec fig_grid;
  std::string fig_spacing = "linear";
  std::vector<double> fig_bs;
  std::string fig_out;
  auto* figures = app.add_subcommand("figures", "Write fig1.csv and fig2.csv");
  figures->add_option("--out", fig_out, "Output directory")->required();
  figures->add_option("--start", fig_grid.start)->capture_default_str();
  figures->add_option("--stop", fig_grid.stop)->capture_default_str();
  figures->add_option("--count", fig_grid.count)->capture_default_str();
  figures->add_option("--spacing", fig_spacing, "linear or log-symmetric")->capture_default_str();
  figures->add_option("--b", fig_bs, "squareplus b values (repeatable; default 4ln^2 2 and 4)");

  // verify
  std::vector<std::string> verify_names;
  std::optional<double> verify_b;
  auto* verify_cmd = app.add_subcommand("verify", "Run numerical checks; exit 1 on any failure");
  verify_cmd->add_option("checks", verify_names, "Check names or 'all' (default all)");
  verify_cmd->add_option("--b", verify_b, "Override b for the b-parameterised checks");
  verify_cmd->add_flag_callback(
      "--list",
      [&out] {
        for (const auto& c : verify::registry()) out << c.name << "  " << c.description << '\n';
        throw CLI::Success();
      },
      "List check names");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (eval->parsed()) {
      Activation act = parse_activation(eval_act);
      if (eval_b) {
        if (act.kind() != "squareplus") throw UsageError("--b only applies to squareplus");
        act = Squareplus{*eval_b};
      }
      if (eval_alpha) {
        if (act.kind() != "elu") throw UsageError("--alpha only applies to elu");
        act = Elu{*eval_alpha};
      }
      out << cmd_eval(act, eval_xs, parse_precision(eval_precision));
      return kExitOk;
    }
    if (bench_cmd->parsed()) {
      if (!bench_acts.empty()) {
        bench_cfg.activations.clear();
        for (const auto& a : bench_acts) bench_cfg.activations.push_back(parse_activation(a));
      }
      bench_cfg.precision = parse_precision(bench_precision);
      const auto format = bench::parse_report_format(bench_format);
      bench_cfg.validate();
      out << cmd_bench(bench_cfg, format, &err);
      return kExitOk;
    }
    if (figures->parsed()) {
      fig_grid.spacing = verify::parse_spacing(fig_spacing);
      fig_grid.validate();
      if (fig_bs.empty()) fig_bs = {kBSoftplusMatch, kBUnit};
      cmd_figures(fig_grid, fig_bs, fig_out);
      out << "wrote " << (std::filesystem::path(fig_out) / "fig1.csv").string() << " and "
          << (std::filesystem::path(fig_out) / "fig2.csv").string() << '\n';
      return kExitOk;
    }
    if (verify_cmd->parsed()) {
      if (verify_names.empty()) verify_names.push_back("all");
      verify::CheckOptions options;
      options.b = verify_b;
      const auto outcome = cmd_verify(verify_names, options);
      out << outcome.text;
      return outcome.exit_code;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace sqp::cli
