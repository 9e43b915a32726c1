#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "contact_bounds/cli.hpp"
#include "contact_bounds/error.hpp"

using namespace cbounds;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kInvalidInput = 2, kNumericalFailure = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read config '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ValidationError, "cannot write '" + path + "'");
  out << text;
}

std::string intervals_csv(const RunReport& r) {
  std::string out = "interval,tau_lo,tau_hi,empty,regime\n";
  auto row = [&](const char* name, const LoadInterval& in) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s,%.12g,%.12g,%s,%s\n", name, in.tau_lo, in.tau_hi,
                  in.empty ? "true" : "false", to_string(in.regime));
    out += buf;
  };
  row("closed_form", r.closed_form);
  if (r.numeric) row("numeric", *r.numeric);
  row("oracle", r.oracle);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Load bounds for two hyperelastic bodies in unilateral contact"};
  app.require_subcommand(1);

  std::string config_path, output_path, format = "report";
  std::optional<std::uint64_t> seed;
  std::optional<int> quad_order, grid_n;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Configuration file")->required();
    sub->add_option("--output", output_path, "Output file (default: standard output)");
    sub->add_option("--seed", seed, "Override the numerics seed");
    sub->add_option("--quad-order", quad_order, "Override the quadrature order");
    sub->add_option("--grid-n", grid_n, "Override the oracle grid size");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "Evaluate one configuration");
  common(run_cmd);
  run_cmd->add_option("--format", format, "report, csv or json")
      ->check(CLI::IsMember({"report", "csv", "json"}));

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Closed-form interval over a parameter range");
  common(sweep_cmd);
  std::string param;
  double lo = 0.0, hi = 0.0;
  int steps = 0;
  sweep_cmd->add_option("--param", param, "a1, a2, g, A, b1, b2, C1 or C2")->required();
  sweep_cmd->add_option("--lo", lo, "Range start")->required();
  sweep_cmd->add_option("--hi", hi, "Range end")->required();
  sweep_cmd->add_option("--steps", steps, "Number of values")->required();

  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the invariant suite for a configuration");
  common(verify_cmd);
  verify_cmd->add_option("--format", format, "report or json")->check(CLI::IsMember({"report", "json"}));
  std::string fault = "none";
  verify_cmd->add_option("--inject-fault", fault, "Test-harness fault: none or closed-form")
      ->check(CLI::IsMember({"none", "closed-form"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    ProblemConfig config = parse_config(read_file(config_path));
    if (seed) config.seed = *seed;
    if (quad_order) config.quad_order = *quad_order;
    if (grid_n) config.grid_n = *grid_n;
    validate(config);
    const ReportFormat fmt = format == "json" ? ReportFormat::Json : ReportFormat::Report;

    if (*run_cmd) {
      const RunReport report = run(config);
      write_output(output_path, format == "csv" ? intervals_csv(report) : format_report(report, config, fmt));
      return kOk;
    }
    if (*sweep_cmd) {
      write_output(output_path, format_csv(sweep(config, param, lo, hi, steps)));
      return kOk;
    }
    const VerifyReport report = verify(config, fault == "closed-form" ? Fault::ClosedFormOffset : Fault::None);
    write_output(output_path, format_verify(report, fmt));
    return report.passed() ? kOk : kVerifyFailed;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::ParseError:
      case ErrorCode::ValidationError:
      case ErrorCode::InvalidParameters:
        return kInvalidInput;
      default:
        return kNumericalFailure;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kNumericalFailure;
  }
}
