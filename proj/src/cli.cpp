#include "contact_bounds/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"

#include "contact_bounds/error.hpp"
#include "contact_bounds/trials.hpp"

namespace cbounds {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void parse_error(int line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::ValidationError, what); }

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(std::string_view v, int line, const std::string& key) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    parse_error(line, key + " must be a finite real, got '" + std::string(v) + "'");
  }
  return out;
}

long long parse_integer(std::string_view v, int line, const std::string& key) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    parse_error(line, key + " must be an integer, got '" + std::string(v) + "'");
  }
  return out;
}

using Setter = std::function<void(ProblemConfig&, std::string_view, int)>;

Setter real_key(double ProblemConfig::*field, const char* key) {
  return [field, key](ProblemConfig& c, std::string_view v, int line) {
    c.*field = parse_real(v, line, key);
  };
}

Setter body_key(BodyConfig ProblemConfig::*body, double BodyConfig::*field, const char* key) {
  return [body, field, key](ProblemConfig& c, std::string_view v, int line) {
    (c.*body).*field = parse_real(v, line, key);
  };
}

Setter body_opt(BodyConfig ProblemConfig::*body, std::optional<double> BodyConfig::*field,
                const char* key) {
  return [body, field, key](ProblemConfig& c, std::string_view v, int line) {
    (c.*body).*field = parse_real(v, line, key);
  };
}

Setter int_key(int ProblemConfig::*field, const char* key) {
  return [field, key](ProblemConfig& c, std::string_view v, int line) {
    const long long n = parse_integer(v, line, key);
    if (n < -1000000000LL || n > 1000000000LL) parse_error(line, std::string(key) + " out of range");
    c.*field = static_cast<int>(n);
  };
}

const std::map<std::string, std::map<std::string, Setter>>& schema() {
  static const std::map<std::string, std::map<std::string, Setter>> s{
      {"system",
       {{"example", [](ProblemConfig& c, std::string_view v, int) { c.example = std::string(v); }},
        {"family",
         [](ProblemConfig& c, std::string_view v, int line) {
           if (v == "triaxial") {
             c.family = Family::Triaxial;
           } else if (v == "bending") {
             c.family = Family::Bending;
           } else {
             parse_error(line, "family must be triaxial or bending");
           }
         }},
        {"A", real_key(&ProblemConfig::A, "A")}}},
      {"body1",
       {{"C1", body_key(&ProblemConfig::body1, &BodyConfig::C, "C1")},
        {"a1", body_key(&ProblemConfig::body1, &BodyConfig::a, "a1")},
        {"b1", body_opt(&ProblemConfig::body1, &BodyConfig::b, "b1")},
        {"p1", body_opt(&ProblemConfig::body1, &BodyConfig::pressure, "p1")}}},
      {"body2",
       {{"C2", body_key(&ProblemConfig::body2, &BodyConfig::C, "C2")},
        {"a2", body_key(&ProblemConfig::body2, &BodyConfig::a, "a2")},
        {"b2", body_opt(&ProblemConfig::body2, &BodyConfig::b, "b2")},
        {"p2", body_opt(&ProblemConfig::body2, &BodyConfig::pressure, "p2")}}},
      {"contact",
       {{"d_allow", real_key(&ProblemConfig::d_allow, "d_allow")},
        {"g", real_key(&ProblemConfig::g, "g")},
        {"regime",
         [](ProblemConfig& c, std::string_view v, int line) {
           if (v == "closed") {
             c.regime = Regime::Closed;
           } else if (v == "open") {
             c.regime = Regime::Open;
           } else {
             parse_error(line, "regime must be closed or open");
           }
         }},
        {"opening", real_key(&ProblemConfig::opening, "opening")}}},
      {"load",
       {{"tau", [](ProblemConfig& c, std::string_view v, int line) {
          c.tau = parse_real(v, line, "tau");
        }}}},
      {"numerics",
       {{"quad_order", int_key(&ProblemConfig::quad_order, "quad_order")},
        {"grid_n", int_key(&ProblemConfig::grid_n, "grid_n")},
        {"probe_count", int_key(&ProblemConfig::probe_count, "probe_count")},
        {"seed",
         [](ProblemConfig& c, std::string_view v, int line) {
           const long long n = parse_integer(v, line, "seed");
           if (n < 0) parse_error(line, "seed must be >= 0");
           c.seed = static_cast<std::uint64_t>(n);
         }},
        {"trials", int_key(&ProblemConfig::trials, "trials")},
        {"enclosure_tol", real_key(&ProblemConfig::enclosure_tol, "enclosure_tol")},
        {"exact_tol", real_key(&ProblemConfig::exact_tol, "exact_tol")},
        {"numeric_tol", real_key(&ProblemConfig::numeric_tol, "numeric_tol")}}},
  };
  return s;
}

std::string num(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string exact_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_bending(const ProblemConfig& c) {
  return c.example == "bending" || (c.example == "custom" && c.family == Family::Bending);
}

double open_value(const ProblemConfig& c) { return example_of(c) == Example::Cohesive ? c.g : 0.0; }

double default_b1(const ProblemConfig& c) { return is_bending(c) ? 1.0 : 0.0; }

const char* kDegenerateIdentity = "degenerate: identity stretch";
const char* kDegenerateEmpty = "degenerate: empty closed-contact interval";
const char* kIntervalMismatch = "interval: numeric or oracle disagrees with closed form";
const char* kSqrtWindow = "window: sqrt(a) differs from C/lambda_max for a > 1";
const char* kProbeVerdict = "criteria: probe verdict differs from closed-form window";
const char* kProfileWindow = "bending: pressure profile leaves the window away from the interface";
const char* kCohesiveLower = "cohesive: lower endpoint reuses the cohesionless expression";
const char* kOutsideWindow = "energy: state outside pressure window, enclosure not guaranteed";
const char* kTrialRejected = "enclosure: trial rejected";
const char* kEqualityCriterion =
    "criteria: complementary condition printed as equality, checked as sign condition";

void warn(std::vector<std::string>& w, const char* what) {
  if (std::find(w.begin(), w.end(), what) == w.end()) w.emplace_back(what);
}

double oracle_resolution(const ProblemConfig& c) {
  const auto [lo, hi] = oracle_bracket(example_of(c), params_of(c));
  return 2.0 * (hi - lo) / c.grid_n;
}

double endpoint_error(const LoadInterval& x, const LoadInterval& ref) {
  return std::max(std::abs(x.tau_lo - ref.tau_lo), std::abs(x.tau_hi - ref.tau_hi));
}

bool pressure_inside(const BodySpec& body, const std::pair<double, double>& w, double Xc) {
  const double p = pressure_at(body, {Xc, 0.0, 0.0});
  return w.first < p && p < w.second;
}

double state_load(const ProblemConfig& c, const LoadInterval& closed_form) {
  if (c.tau) return *c.tau;
  if (c.regime == Regime::Open) return open_value(c);
  if (!closed_form.empty) return 0.5 * (closed_form.tau_lo + closed_form.tau_hi);
  return 0.0;
}

Json interval_json(const LoadInterval& in) {
  return Json{{"tau_lo", in.tau_lo}, {"tau_hi", in.tau_hi}, {"regime", to_string(in.regime)},
              {"empty", in.empty}};
}

std::string interval_text(const LoadInterval& in) {
  return "tau_lo=" + num(in.tau_lo) + " tau_hi=" + num(in.tau_hi) + " regime=" +
         to_string(in.regime) + " empty=" + (in.empty ? "true" : "false");
}

double tolerance_of(const std::string& residual) {
  const Tolerances t;
  if (residual == "gap") return t.gap;
  if (residual == "dirichlet") return t.dirichlet;
  if (residual == "constraint") return t.constraint;
  if (residual == "equilibrium") return t.equilibrium;
  if (residual == "neumann") return t.neumann;
  if (residual == "contact_traction_sign") return t.traction_sign;
  if (residual == "action_reaction") return t.action_reaction;
  return 0.0;
}

SystemSpec translated(const SystemSpec& s, double dx) {
  SystemSpec t = s;
  for (DeformationMap* m : {&t.body1.map, &t.body2.map, &t.prescribed}) {
    if (auto* tri = std::get_if<TriaxialStretch>(m)) tri->b += dx;
  }
  return t;
}

}  // namespace

ProblemConfig parse_config(std::string_view text) {
  ProblemConfig c;
  const auto& sch = schema();
  const std::map<std::string, Setter>* section = nullptr;
  std::string section_name;
  std::map<std::string, int> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') parse_error(line_no, "malformed section header");
      section_name = std::string(trim(line.substr(1, line.size() - 2)));
      const auto it = sch.find(section_name);
      if (it == sch.end()) parse_error(line_no, "unknown section '" + section_name + "'");
      section = &it->second;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) parse_error(line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (section == nullptr) parse_error(line_no, "key '" + key + "' outside any section");
    const auto it = section->find(key);
    if (it == section->end()) {
      parse_error(line_no, "unknown key '" + key + "' in section [" + section_name + "]");
    }
    if (const auto [s, fresh] = seen.emplace(key, line_no); !fresh) {
      parse_error(line_no, "duplicate key '" + key + "' (first on line " + std::to_string(s->second) + ")");
    }
    if (value.empty()) parse_error(line_no, "empty value for '" + key + "'");
    it->second(c, value, line_no);
    if (end == text.size()) break;
  }
  validate(c);
  return c;
}

std::string serialize_config(const ProblemConfig& c) {
  std::ostringstream o;
  o << "[system]\nexample = " << c.example << "\n";
  if (c.example == "custom") o << "family = " << (c.family == Family::Bending ? "bending" : "triaxial") << "\n";
  o << "A = " << exact_num(c.A) << "\n";
  const BodyConfig* bodies[2] = {&c.body1, &c.body2};
  for (int i = 0; i < 2; ++i) {
    const std::string n = std::to_string(i + 1);
    o << "\n[body" << n << "]\n";
    o << "C" << n << " = " << exact_num(bodies[i]->C) << "\n";
    o << "a" << n << " = " << exact_num(bodies[i]->a) << "\n";
    if (bodies[i]->b) o << "b" << n << " = " << exact_num(*bodies[i]->b) << "\n";
    if (bodies[i]->pressure) o << "p" << n << " = " << exact_num(*bodies[i]->pressure) << "\n";
  }
  o << "\n[contact]\nd_allow = " << exact_num(c.d_allow) << "\ng = " << exact_num(c.g)
    << "\nregime = " << to_string(c.regime) << "\nopening = " << exact_num(c.opening) << "\n";
  if (c.tau) o << "\n[load]\ntau = " << exact_num(*c.tau) << "\n";
  o << "\n[numerics]\nquad_order = " << c.quad_order << "\ngrid_n = " << c.grid_n
    << "\nprobe_count = " << c.probe_count << "\nseed = " << c.seed << "\ntrials = " << c.trials
    << "\nenclosure_tol = " << exact_num(c.enclosure_tol) << "\nexact_tol = " << exact_num(c.exact_tol)
    << "\nnumeric_tol = " << exact_num(c.numeric_tol) << "\n";
  return o.str();
}

void validate(const ProblemConfig& c) {
  static const char* kExamples[] = {"compression", "cohesive", "bending", "custom"};
  if (std::find(std::begin(kExamples), std::end(kExamples), c.example) == std::end(kExamples)) {
    invalid("example must be compression, cohesive, bending or custom");
  }
  auto positive = [](double v, const char* name) {
    if (!(std::isfinite(v) && v > 0.0)) invalid(std::string(name) + " must be positive");
  };
  positive(c.body1.C, "C1");
  positive(c.body2.C, "C2");
  positive(c.body1.a, "a1");
  positive(c.body2.a, "a2");
  positive(c.A, "A");
  positive(c.opening, "opening");
  positive(c.enclosure_tol, "enclosure_tol");
  positive(c.exact_tol, "exact_tol");
  positive(c.numeric_tol, "numeric_tol");
  if (!(c.d_allow >= 0.0)) invalid("d_allow must be >= 0");
  if (!(c.g >= 0.0)) invalid("g must be >= 0");
  if (c.example == "cohesive" && !(c.g > 0.0)) invalid("g must be positive for the cohesive example");
  if ((c.example == "compression" || c.example == "bending") && c.g != 0.0) {
    invalid("g must be 0 for the " + c.example + " example");
  }
  if (c.quad_order < 1) invalid("quad_order must be >= 1");
  if (c.grid_n < 100) invalid("grid_n must be >= 100");
  if (c.probe_count < kMinProbeCount) invalid("probe_count must be >= 100");
  if (c.trials < 0) invalid("trials must be >= 0");
  if (c.example == "custom" && !(c.body1.pressure && c.body2.pressure)) {
    invalid("custom example needs p1 and p2");
  }
  if (is_bending(c)) {
    const double b1 = c.body1.b.value_or(1.0);
    if (!(b1 > kMinRadius * kMinRadius)) invalid("b1 must exceed r_min^2 so that r0 > r_min");
    if (c.body2.b && std::abs(std::sqrt(c.body2.a + *c.body2.b) - std::sqrt(c.body1.a + b1)) >
                         1e-9 * std::sqrt(c.body1.a + b1)) {
      invalid("bending bodies must meet at the interface radius: a2 + b2 = a1 + b1");
    }
  }
}

Example example_of(const ProblemConfig& c) {
  if (c.example == "custom") {
    if (c.family == Family::Bending) return Example::Bending;
    return c.g > 0.0 ? Example::Cohesive : Example::Compression;
  }
  return parse_example(c.example);
}

ExampleParams params_of(const ProblemConfig& c) {
  ExampleParams p;
  p.C1 = c.body1.C;
  p.C2 = c.body2.C;
  p.a1 = c.body1.a;
  p.a2 = c.body2.a;
  p.g = c.g;
  p.A = c.A;
  p.b1 = c.body1.b.value_or(default_b1(c));
  p.b2 = c.body2.b.value_or(p.a1 + p.b1 - p.a2);
  p.contact_closed = c.regime == Regime::Closed;
  return p;
}

SystemSpec state_of(const ProblemConfig& c, double tau) {
  validate(c);
  const Example ex = example_of(c);
  ExampleParams params = params_of(c);
  auto [b1, b2] = example_bodies(ex, params);
  SystemSpec s = default_system();
  s.d_allow = c.d_allow;
  s.g = c.g;
  const double Xc = contact_plane(s);
  // Interface gap of the state: d_allow when closed, d_allow - opening when open.
  const double shift = c.regime == Regime::Open ? c.opening - c.d_allow : -c.d_allow;
  if (std::holds_alternative<TriaxialStretch>(b1.map)) {
    const double t1 = c.body1.b.value_or(0.0);
    b1.map = TriaxialStretch{c.body1.a, t1};
    b2.map = TriaxialStretch{c.body2.a, c.body2.b.value_or(t1 + (c.body1.a - c.body2.a) * Xc + shift)};
  } else if (!c.body2.b) {
    const double rc = bend_radius(std::get<StretchBend>(b1.map), Xc) + shift;
    if (!(rc > kMinRadius)) invalid("opening leaves no positive interface radius");
    b2.map = StretchBend{c.A, c.body2.a, rc * rc - 2.0 * c.body2.a * Xc};
  }
  validate(b2.map, b2.domain);

  const BodySpec* bodies[2] = {&b1, &b2};
  const BodyConfig* cfg[2] = {&c.body1, &c.body2};
  PressureField pressures[2];
  for (int i = 0; i < 2; ++i) {
    const double ln = deformation_gradient(bodies[i]->map, {Xc, 0.0, 0.0})(0, 0);
    const double C = shear_constant(bodies[i]->material);
    const double traction = cfg[i]->pressure ? C * ln * ln - *cfg[i]->pressure : tau;
    if (std::holds_alternative<TriaxialStretch>(bodies[i]->map)) {
      pressures[i] = ConstantPressure{C * ln * ln - traction};
    } else {
      pressures[i] = solve_radial_pressure(*bodies[i], traction, i == 0 ? RadialEnd::Outer : RadialEnd::Inner);
    }
  }
  b1.pressure = pressures[0];
  b2.pressure = pressures[1];
  s.body1 = b1;
  s.body2 = b2;
  s.prescribed = b2.map;
  validate(s);
  return s;
}

const std::vector<std::string>& warning_vocabulary() {
  static const std::vector<std::string> v{kDegenerateIdentity, kDegenerateEmpty, kIntervalMismatch,
                                          kSqrtWindow,         kProbeVerdict,    kProfileWindow,
                                          kCohesiveLower,      kOutsideWindow,   kTrialRejected,
                                          kEqualityCriterion};
  return v;
}

RunReport run(const ProblemConfig& c) {
  validate(c);
  RunReport r;
  const Example ex = example_of(c);
  const ExampleParams params = params_of(c);
  r.example = c.example;
  r.closed_form = closed_form_interval(ex, params);
  r.state_load = state_load(c, r.closed_form);
  const SystemSpec s = state_of(c, r.state_load);
  const double Xc = contact_plane(s);

  const int inj_order = std::max(2, c.quad_order);
  r.injective = injectivity_check(s.body1.map, s.body1.domain, inj_order) &&
                injectivity_check(s.body2.map, s.body2.domain, inj_order);
  r.kinematic = check_kinematic(s, {}, c.quad_order);
  const double neumann_load = is_bending(c) ? contact_traction(s.body1, s.body1.domain.x_lo) : r.state_load;
  r.statics = check_static(s, neumann_load, TractionMeasure::Cauchy);
  r.contact = evaluate_contact(s, TractionMeasure::Cauchy);

  const bool stable = within_pressure_window(s);
  if (c.tau) {
    if (!stable) warn(r.warnings, kOutsideWindow);
    const QuadratureRule rule(c.quad_order);
    const StaticField field = static_field_of(s);
    const DeadLoad load = dead_load_of(field);
    try {
      r.enclosure_exact = enclosure(s, field, load, rule);
      std::mt19937_64 rng(c.seed);
      const SystemSpec kin = random_kinematic_trial(s, rng);
      const StaticField st = static_trial(s, random_static_perturbation(rng));
      r.enclosure_trial = enclosure(kin, st, load, rule);
    } catch (const Error&) {
      warn(r.warnings, kTrialRejected);
    }
  }

  r.criteria1 = criteria_check(s.body1, c.probe_count, c.seed);
  r.criteria2 = criteria_check(s.body2, c.probe_count, c.seed + 1);
  const CriteriaResult* crit[2] = {&r.criteria1, &r.criteria2};
  const BodySpec* bodies[2] = {&s.body1, &s.body2};
  for (int i = 0; i < 2; ++i) {
    const bool inside = pressure_inside(*bodies[i], crit[i]->pressure_window, Xc);
    if (inside != (crit[i]->primal_ok && crit[i]->complementary_ok)) warn(r.warnings, kProbeVerdict);
    if (inside && std::holds_alternative<RadialPressureProfile>(bodies[i]->pressure) && !stable) {
      warn(r.warnings, kProfileWindow);
    }
  }

  try {
    SearchConfig sc;
    sc.seed = c.seed;
    sc.probe_count = c.probe_count;
    r.numeric = numeric_load_bounds(ex, params, sc);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InfeasibleProblem) throw;
  }
  r.oracle = brute_force_oracle(ex, params, c.grid_n);

  if (r.closed_form.empty) {
    const bool identity = ex != Example::Bending && (params.a1 == 1.0 || params.a2 == 1.0);
    warn(r.warnings, identity ? kDegenerateIdentity : kDegenerateEmpty);
  }
  bool consistent = true;
  if (r.closed_form.empty) {
    consistent = !r.numeric && r.oracle.empty;
  } else {
    consistent = r.numeric && endpoint_error(*r.numeric, r.closed_form) <= c.numeric_tol &&
                 !r.oracle.empty && endpoint_error(r.oracle, r.closed_form) <= oracle_resolution(c);
  }
  if (!consistent) warn(r.warnings, kIntervalMismatch);
  if (ex != Example::Bending && (params.a1 > 1.0 || params.a2 > 1.0)) warn(r.warnings, kSqrtWindow);
  if (ex == Example::Cohesive && r.closed_form.regime == Regime::Closed) warn(r.warnings, kCohesiveLower);
  return r;
}

std::string format_report(const RunReport& r, const ProblemConfig& c, ReportFormat format) {
  const double res = oracle_resolution(c);
  if (format == ReportFormat::Json) {
    auto admissibility = [](const AdmissibilityReport& a, bool kinematic) {
      Json j{{"ok", kinematic ? a.kinematic_ok : a.static_ok}};
      Json resid = Json::object();
      for (const auto& [name, v] : a.residuals) resid[name] = {{"value", v}, {"tolerance", tolerance_of(name)}};
      j["residuals"] = resid;
      return j;
    };
    auto criteria = [](const CriteriaResult& cr) {
      return Json{{"primal_ok", cr.primal_ok},
                  {"complementary_ok", cr.complementary_ok},
                  {"min_quadratic_value", cr.min_quadratic_value},
                  {"pressure_window", {cr.pressure_window.first, cr.pressure_window.second}}};
    };
    Json j{{"example", r.example}, {"state_load", r.state_load}, {"injective", r.injective}};
    j["kinematic"] = admissibility(r.kinematic, true);
    j["static"] = admissibility(r.statics, false);
    j["contact"] = {{"gap", r.contact.gap},
                    {"traction_normal", r.contact.traction_normal},
                    {"traction_body2", r.contact.traction_body2},
                    {"complementarity_residual", r.contact.complementarity_residual},
                    {"action_reaction_residual", r.contact.action_reaction_residual},
                    {"regime", to_string(r.contact.regime)}};
    auto enc = [](const std::optional<EnergyEnclosure>& e) {
      if (!e) return Json(nullptr);
      return Json{{"e_complementary", e->e_complementary}, {"e_potential", e->e_potential}, {"gap", e->gap}};
    };
    j["enclosure_exact"] = enc(r.enclosure_exact);
    j["enclosure_trial"] = enc(r.enclosure_trial);
    j["closed_form"] = interval_json(r.closed_form);
    j["numeric"] = r.numeric ? interval_json(*r.numeric) : Json(nullptr);
    j["numeric_tolerance"] = c.numeric_tol;
    j["oracle"] = interval_json(r.oracle);
    j["oracle_tolerance"] = res;
    j["criteria"] = {{"body1", criteria(r.criteria1)}, {"body2", criteria(r.criteria2)}};
    j["interface_term_convention"] = "per body, cancelled by action-reaction";
    j["warnings"] = r.warnings;
    return j.dump(2) + "\n";
  }

  std::ostringstream o;
  o << "example: " << r.example << "\n";
  o << "state_load: " << num(r.state_load) << "\n";
  o << "injective: " << (r.injective ? "true" : "false") << "\n";
  auto section = [&](const char* name, const AdmissibilityReport& a, bool ok) {
    o << "\n[" << name << "] ok=" << (ok ? "true" : "false") << "\n";
    for (const auto& [k, v] : a.residuals) o << "  " << k << " = " << num(v) << " (tol " << num(tolerance_of(k)) << ")\n";
  };
  section("kinematic", r.kinematic, r.kinematic.kinematic_ok);
  section("static", r.statics, r.statics.static_ok);
  o << "\n[contact]\n  regime = " << to_string(r.contact.regime) << "\n  gap = " << num(r.contact.gap)
    << "\n  traction_normal = " << num(r.contact.traction_normal)
    << "\n  traction_body2 = " << num(r.contact.traction_body2)
    << "\n  complementarity_residual = " << num(r.contact.complementarity_residual)
    << "\n  action_reaction_residual = " << num(r.contact.action_reaction_residual)
    << "\n  interface_term_convention = per body, cancelled by action-reaction\n";
  auto enc = [&](const char* name, const std::optional<EnergyEnclosure>& e, double tol) {
    if (!e) return;
    o << "\n[" << name << "]\n  e_complementary = " << num(e->e_complementary)
      << "\n  e_potential = " << num(e->e_potential) << "\n  gap = " << num(e->gap) << " (tol " << num(tol) << ")\n";
  };
  enc("enclosure_exact", r.enclosure_exact, c.exact_tol);
  enc("enclosure_trial", r.enclosure_trial, c.enclosure_tol);
  o << "\n[intervals]\n  closed_form: " << interval_text(r.closed_form) << "\n";
  o << "  numeric: " << (r.numeric ? interval_text(*r.numeric) : std::string("infeasible"))
    << " (tol " << num(c.numeric_tol) << ")\n";
  o << "  oracle: " << interval_text(r.oracle) << " (tol " << num(res) << ")\n";
  auto crit = [&](const char* name, const CriteriaResult& cr) {
    o << "\n[criteria " << name << "]\n  primal_ok = " << (cr.primal_ok ? "true" : "false")
      << "\n  complementary_ok = " << (cr.complementary_ok ? "true" : "false")
      << "\n  min_quadratic_value = " << num(cr.min_quadratic_value) << " (tol " << num(kPositivityTolerance)
      << ")\n  pressure_window = (" << num(cr.pressure_window.first) << ", " << num(cr.pressure_window.second) << ")\n";
  };
  crit("body1", r.criteria1);
  crit("body2", r.criteria2);
  o << "\n[warnings]\n";
  for (const auto& w : r.warnings) o << "  - " << w << "\n";
  return o.str();
}

std::vector<SweepRow> sweep(const ProblemConfig& config, const std::string& param, double lo,
                            double hi, int steps) {
  static const char* kParams[] = {"a1", "a2", "g", "A", "b1", "b2", "C1", "C2"};
  if (std::find(std::begin(kParams), std::end(kParams), param) == std::end(kParams)) {
    invalid("sweep param must be one of a1, a2, g, A, b1, b2, C1, C2");
  }
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) invalid("sweep range needs lo < hi");
  if (steps < 2) invalid("sweep needs steps >= 2");
  std::vector<SweepRow> rows;
  for (int k = 0; k < steps; ++k) {
    SweepRow row;
    row.value = lo + (hi - lo) * k / (steps - 1);
    ProblemConfig c = config;
    if (param == "a1") c.body1.a = row.value;
    if (param == "a2") c.body2.a = row.value;
    if (param == "g") c.g = row.value;
    if (param == "A") c.A = row.value;
    if (param == "b1") c.body1.b = row.value;
    if (param == "b2") c.body2.b = row.value;
    if (param == "C1") c.body1.C = row.value;
    if (param == "C2") c.body2.C = row.value;
    try {
      validate(c);
      row.interval = closed_form_interval(example_of(c), params_of(c));
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

std::string format_csv(const std::vector<SweepRow>& rows) {
  std::string out = "param,tau_lo,tau_hi,empty,regime,error\n";
  for (const auto& row : rows) {
    out += num(row.value) + ",";
    if (row.interval) {
      out += num(row.interval->tau_lo) + "," + num(row.interval->tau_hi) + "," +
             (row.interval->empty ? "true" : "false") + "," + to_string(row.interval->regime) + ",";
    } else {
      out += ",,,,";
    }
    if (!row.error.empty()) {
      std::string q = "\"";
      for (char ch : row.error) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      out += q + "\"";
    }
    out += "\n";
  }
  return out;
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerifyReport verify(const ProblemConfig& c, Fault fault) {
  VerifyReport v;
  auto add = [&](const std::string& name, double observed, double expected, double tol) {
    v.checks.push_back({name, std::abs(observed - expected) <= tol, observed, expected, tol});
  };
  auto add_flag = [&](const std::string& name, bool ok) {
    v.checks.push_back({name, ok, ok ? 1.0 : 0.0, 1.0, 0.0});
  };

  RunReport r = run(c);
  const Example ex = example_of(c);
  const ExampleParams params = params_of(c);
  if (fault == Fault::ClosedFormOffset) r.closed_form.tau_lo += 0.05;
  v.warnings = r.warnings;
  warn(v.warnings, kEqualityCriterion);

  const SystemSpec s = state_of(c, r.state_load);
  double inj = 0.0;
  for (const BodySpec* b : {&s.body1, &s.body2}) {
    const auto rep = injectivity_report(b->map, b->domain, std::max(2, c.quad_order));
    inj = std::max(inj, std::abs(rep.jacobian_integral - rep.image_volume));
  }
  add("injectivity", inj, 0.0, 1e-9);
  add_flag("kinematic_admissibility", r.kinematic.kinematic_ok);
  add_flag("static_admissibility", r.statics.static_ok);
  add_flag("regime", r.contact.regime == c.regime);

  const QuadratureRule rule(c.quad_order), fine(2 * c.quad_order);
  const StaticField field = static_field_of(s);
  const DeadLoad load = dead_load_of(field);
  const double ep = potential_energy(s, load, rule), ec = complementary_energy(field, s, rule);
  add("exact_enclosure", ep - ec, 0.0, c.exact_tol);
  const double conv = std::max(std::abs(ep - potential_energy(s, load, fine)),
                               std::abs(ec - complementary_energy(field, s, fine)));
  add("quadrature_convergence", conv, 0.0, c.enclosure_tol);
  if (!is_bending(c)) add("divergence_identity", divergence_identity_residual(s, field, rule), 0.0, 1e-9);

  if (within_pressure_window(s)) {
    std::mt19937_64 rng(c.seed);
    double worst = std::numeric_limits<double>::infinity();
    bool built = true;
    for (int k = 0; k < c.trials; ++k) {
      try {
        const SystemSpec kin = random_kinematic_trial(s, rng);
        const StaticField st = static_trial(s, random_static_perturbation(rng));
        worst = std::min(worst, enclosure(kin, st, load, rule).gap);
      } catch (const Error&) {
        built = false;
      }
    }
    if (c.trials > 0) {
      v.checks.push_back({"enclosure_ordering", built && worst >= -c.enclosure_tol, worst, 0.0, c.enclosure_tol});
    }
  } else {
    warn(v.warnings, kOutsideWindow);
  }

  if (r.closed_form.empty) {
    add_flag("numeric_vs_closed_form", !r.numeric);
    add_flag("oracle_vs_closed_form", r.oracle.empty);
  } else {
    add("numeric_vs_closed_form", r.numeric ? endpoint_error(*r.numeric, r.closed_form) : 1.0, 0.0,
        c.numeric_tol);
    add("oracle_vs_closed_form", r.oracle.empty ? 1.0 : endpoint_error(r.oracle, r.closed_form), 0.0,
        oracle_resolution(c));
  }

  double scale_err = 0.0;
  for (double k : {0.5, 2.0, 10.0}) {
    ExampleParams pk = params;
    pk.C1 *= k;
    pk.C2 *= k;
    pk.g *= k;
    const LoadInterval base = closed_form_interval(ex, params);
    scale_err = std::max(scale_err, endpoint_error(closed_form_interval(ex, pk), scaled(base, k)) / k);
  }
  add("scaling_covariance", scale_err, 0.0, 1e-12);

  if (ex != Example::Bending) {
    ExampleParams sw = params;
    std::swap(sw.C1, sw.C2);
    std::swap(sw.a1, sw.a2);
    add("swap_symmetry", endpoint_error(closed_form_interval(ex, sw), closed_form_interval(ex, params)), 0.0, 0.0);

    const SystemSpec t = translated(s, 0.37);
    const Tolerances tol;
    double diff = 0.0;
    const auto k0 = check_kinematic(s, tol, c.quad_order), k1 = check_kinematic(t, tol, c.quad_order);
    const auto s0 = check_static(s, r.state_load), s1 = check_static(t, r.state_load);
    for (const auto& [name, val] : k0.residuals) diff = std::max(diff, std::abs(val - k1.residuals.at(name)));
    for (const auto& [name, val] : s0.residuals) diff = std::max(diff, std::abs(val - s1.residuals.at(name)));
    const auto e0 = evaluate_contact(s), e1 = evaluate_contact(t);
    diff = std::max({diff, std::abs(e0.gap - e1.gap), std::abs(e0.traction_normal - e1.traction_normal),
                     std::abs(e0.action_reaction_residual - e1.action_reaction_residual)});
    add("translation_invariance", diff, 0.0, 1e-12);
  }
  return v;
}

std::string format_verify(const VerifyReport& v, ReportFormat format) {
  if (format == ReportFormat::Json) {
    Json checks = Json::array();
    for (const auto& c : v.checks) {
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"observed", c.observed},
                        {"expected", c.expected}, {"tolerance", c.tolerance}});
    }
    return Json{{"passed", v.passed()}, {"checks", checks}, {"warnings", v.warnings}}.dump(2) + "\n";
  }
  std::ostringstream o;
  for (const auto& c : v.checks) {
    o << (c.passed ? "PASS " : "FAIL ") << c.name << " observed=" << num(c.observed)
      << " expected=" << num(c.expected) << " tol=" << num(c.tolerance) << "\n";
  }
  o << "\n[warnings]\n";
  for (const auto& w : v.warnings) o << "  - " << w << "\n";
  o << "\nresult: " << (v.passed() ? "PASS" : "FAIL") << "\n";
  return o.str();
}

}  // namespace cbounds
