#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "contact_bounds/bounds.hpp"
#include "contact_bounds/energy.hpp"

namespace cbounds {

enum class Family { Triaxial, Bending };

struct BodyConfig {
  double C = 1.0;
  double a = 1.0;
  std::optional<double> b;         // bending offset, or triaxial x-translation of body 1
  std::optional<double> pressure;  // interface pressure; derived from the load when absent
};

struct ProblemConfig {
  std::string example = "compression";  // compression, cohesive, bending or custom
  Family family = Family::Triaxial;     // read only for custom
  double A = 1.0;
  BodyConfig body1, body2;
  double d_allow = 0.0;
  double g = 0.0;
  Regime regime = Regime::Closed;
  double opening = 0.01;
  std::optional<double> tau;  // absent: compute bounds only
  int quad_order = 8;
  int grid_n = 1000;
  int probe_count = 200;
  std::uint64_t seed = 42;
  int trials = 5;
  double enclosure_tol = 1e-9;
  double exact_tol = 1e-8;
  double numeric_tol = 1e-6;
};

// Sections [system], [body1], [body2], [contact], [load], [numerics]; key = value lines and
// '#' comments. Unknown sections or keys raise ParseError with the line number.
ProblemConfig parse_config(std::string_view text);
std::string serialize_config(const ProblemConfig& config);
// Throws ValidationError naming the violated invariant.
void validate(const ProblemConfig& config);

// The bounds example the config maps onto (custom picks it from family and g).
Example example_of(const ProblemConfig& config);
ExampleParams params_of(const ProblemConfig& config);

// Equilibrium state of the config at interface load tau (Cauchy).
SystemSpec state_of(const ProblemConfig& config, double tau);

// Closed warning vocabulary; each entry names a known ambiguity of the underlying model.
const std::vector<std::string>& warning_vocabulary();

struct RunReport {
  std::string example;
  double state_load = 0.0;
  bool injective = false;
  AdmissibilityReport kinematic;
  AdmissibilityReport statics;
  ContactEvaluation contact;
  std::optional<EnergyEnclosure> enclosure_exact;
  std::optional<EnergyEnclosure> enclosure_trial;
  LoadInterval closed_form;
  std::optional<LoadInterval> numeric;
  LoadInterval oracle;
  CriteriaResult criteria1, criteria2;
  std::vector<std::string> warnings;
};

RunReport run(const ProblemConfig& config);

enum class ReportFormat { Report, Json };
std::string format_report(const RunReport& report, const ProblemConfig& config, ReportFormat format);

struct SweepRow {
  double value = 0.0;
  std::optional<LoadInterval> interval;
  std::string error;
};

// Closed-form interval at steps evenly spaced values of param in [lo, hi].
std::vector<SweepRow> sweep(const ProblemConfig& config, const std::string& param, double lo,
                            double hi, int steps);
std::string format_csv(const std::vector<SweepRow>& rows);

struct CheckResult {
  std::string name;
  bool passed = false;
  double observed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
};

// Test-harness faults; each should make verify fail.
enum class Fault { None, ClosedFormOffset };

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::vector<std::string> warnings;
  bool passed() const;
};

VerifyReport verify(const ProblemConfig& config, Fault fault = Fault::None);
std::string format_verify(const VerifyReport& report, ReportFormat format);

}  // namespace cbounds
