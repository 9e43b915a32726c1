#pragma once

#include <cstdint>
#include <string_view>
#include <utility>

#include "contact_bounds/contact.hpp"

namespace cbounds {

// Admissible loads. Closed contact gives an open interval (tau_lo, tau_hi); open contact gives the
// single value tau_lo = tau_hi.
struct LoadInterval {
  double tau_lo = 0.0;
  double tau_hi = 0.0;
  Regime regime = Regime::Closed;
  bool empty = false;
};

LoadInterval closed_interval(double lo, double hi);
LoadInterval open_singleton(double tau);
LoadInterval scaled(const LoadInterval& in, double k);

struct CriteriaResult {
  bool primal_ok = false;
  bool complementary_ok = false;
  double min_quadratic_value = 0.0;
  std::pair<double, double> pressure_window{0.0, 0.0};
};

inline constexpr double kPositivityTolerance = 1e-10;
inline constexpr int kMinProbeCount = 100;

// Rayleigh quotients of the second variation over probe_count constraint-tangent probes per side.
// Primal probes are bumps vanishing on the X faces; complementary probes may reach any face.
CriteriaResult criteria_check(const BodySpec& body, int probe_count, std::uint64_t seed);

// (-C / lambda_max, C / lambda_max) for triaxial and bending bodies.
std::pair<double, double> pressure_window(const BodySpec& body);

// Last accepted pressures of a constant-pressure sweep over [lo, hi] with the given step, per side
// of zero. Throws InfeasibleProblem when no pressure in the sweep passes.
std::pair<double, double> probed_window(const BodySpec& body, double lo, double hi, double step,
                                        int probe_count, std::uint64_t seed);

LoadInterval load_interval_compression(double C1, double C2, double a1, double a2,
                                       bool contact_closed);
LoadInterval load_interval_cohesive(double C1, double C2, double a1, double a2, double g,
                                    bool contact_closed);
LoadInterval load_interval_bending(double C1, double C2, double A, double a1, double a2, double b1,
                                   double b2, bool contact_closed);

enum class Example { Compression, Cohesive, Bending };
const char* to_string(Example e);
Example parse_example(std::string_view name);

struct ExampleParams {
  double C1 = 1.0, C2 = 1.0;
  double a1 = 1.0, a2 = 1.0;
  double g = 0.0;
  double A = 1.0, b1 = 1.0, b2 = 1.0;
  bool contact_closed = true;
};

void validate(Example example, const ExampleParams& p);
LoadInterval closed_form_interval(Example example, const ExampleParams& p);

// Bodies of the example with pressures left at zero.
std::pair<BodySpec, BodySpec> example_bodies(Example example, const ExampleParams& p);

enum class WindowSource { ClosedForm, Probed };

struct SearchConfig {
  double tolerance = 1e-12;
  int scan_points = 2001;
  WindowSource window = WindowSource::ClosedForm;
  int probe_count = 200;
  std::uint64_t seed = 1;
  double probe_step = 0.005;
};

// Pressure pair that puts Cauchy traction tau on both sides of the interface; bending pressures
// are the interface values of the radial-equilibrium profiles.
std::pair<double, double> interface_pressures(Example example, const ExampleParams& p, double tau);

// Interval of tau for which interface_pressures lies inside both windows and the traction sign
// bound holds, located by scanning and bisection. Throws InfeasibleProblem when nothing is feasible.
LoadInterval numeric_load_bounds(Example example, const ExampleParams& p,
                                 const SearchConfig& config = {});

// Scan bracket for tau: [-2 max C lambda^2, g + 2 max C lambda^2].
std::pair<double, double> oracle_bracket(Example example, const ExampleParams& p);

// Exhaustive grid scan over tau and, per body, over pressures; hull of accepted tau.
LoadInterval brute_force_oracle(Example example, const ExampleParams& p, int grid_n);

}  // namespace cbounds
