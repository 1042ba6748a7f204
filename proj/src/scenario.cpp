#include "radgas/scenario.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "radgas/io.hpp"

namespace radgas {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& v, bool allow_inf = false) {
  if (allow_inf && (v == "inf" || v == "infinity")) return std::numeric_limits<double>::infinity();
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(x))
    throw std::invalid_argument("'" + v + "' is not a finite number");
  return x;
}

long long parse_integer(const std::string& v) {
  char* end = nullptr;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size()) throw std::invalid_argument("'" + v + "' is not an integer");
  return x;
}

std::size_t parse_count(const std::string& v) {
  const long long x = parse_integer(v);
  if (x < 0) throw std::invalid_argument("'" + v + "' must be nonnegative");
  return static_cast<std::size_t>(x);
}

std::vector<double> parse_list(const std::string& v, bool allow_inf = false) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw std::invalid_argument("empty list entry in '" + v + "'");
    out.push_back(parse_number(item, allow_inf));
  }
  return out;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw std::invalid_argument("'" + v + "' is not a boolean");
}

using Setter = std::function<void(Scenario&, const std::string&)>;
using KeyTable = std::map<std::string, std::map<std::string, Setter>>;

const KeyTable& key_table() {
  static const KeyTable table = {
      {"flux",
       {{"name", [](Scenario& s, const std::string& v) { s.flux_name = v; }},
        {"f_coefficients", [](Scenario& s, const std::string& v) { s.f_coefficients = parse_list(v); }},
        {"g_coefficients", [](Scenario& s, const std::string& v) { s.g_coefficients = parse_list(v); }},
        {"alpha", [](Scenario& s, const std::string& v) { s.alpha = parse_number(v); }}}},
      {"riemann",
       {{"u_minus", [](Scenario& s, const std::string& v) { s.u_minus = parse_number(v); }},
        {"u_plus", [](Scenario& s, const std::string& v) { s.u_plus = parse_number(v); }}}},
      {"grid",
       {{"n", [](Scenario& s, const std::string& v) { s.n = parse_count(v); }},
        {"length", [](Scenario& s, const std::string& v) { s.length = parse_number(v); }},
        {"ny", [](Scenario& s, const std::string& v) { s.ny = parse_count(v); }},
        {"ly", [](Scenario& s, const std::string& v) { s.ly = parse_number(v); }}}},
      {"initial",
       {{"family",
         [](Scenario& s, const std::string& v) {
           if (v == "profile") s.family = InitialFamily::profile;
           else if (v == "tanh") s.family = InitialFamily::tanh;
           else if (v == "step") s.family = InitialFamily::step;
           else throw std::invalid_argument("'" + v + "' is not one of profile, tanh, step");
         }},
        {"t0", [](Scenario& s, const std::string& v) { s.t0 = parse_number(v); }},
        {"tanh_width", [](Scenario& s, const std::string& v) { s.tanh_width = parse_number(v); }},
        {"step_center", [](Scenario& s, const std::string& v) { s.step_center = parse_number(v); }},
        {"bump_amplitude", [](Scenario& s, const std::string& v) { s.bump_amplitude = parse_number(v); }},
        {"bump_center", [](Scenario& s, const std::string& v) { s.bump_center = parse_number(v); }},
        {"bump_width", [](Scenario& s, const std::string& v) { s.bump_width = parse_number(v); }},
        {"sine_amplitude", [](Scenario& s, const std::string& v) { s.sine_amplitude = parse_number(v); }},
        {"noise_amplitude", [](Scenario& s, const std::string& v) { s.noise_amplitude = parse_number(v); }},
        {"seed",
         [](Scenario& s, const std::string& v) { s.seed = static_cast<std::uint64_t>(parse_count(v)); }}}},
      {"time",
       {{"t_final", [](Scenario& s, const std::string& v) { s.t_final = parse_number(v); }},
        {"snapshots", [](Scenario& s, const std::string& v) { s.snapshot_times = parse_list(v); }},
        {"diag_interval", [](Scenario& s, const std::string& v) { s.diag_interval = parse_number(v); }},
        {"cfl", [](Scenario& s, const std::string& v) { s.cfl = parse_number(v); }}}},
      {"run",
       {{"name", [](Scenario& s, const std::string& v) { s.name = v; }},
        {"formulation",
         [](Scenario& s, const std::string& v) {
           if (v == "coupled") s.formulation = FormulationChoice::coupled;
           else if (v == "convolution") s.formulation = FormulationChoice::convolution;
           else if (v == "both") s.formulation = FormulationChoice::both;
           else throw std::invalid_argument("'" + v + "' is not one of coupled, convolution, both");
         }},
        {"output", [](Scenario& s, const std::string& v) { s.output_dir = v; }}}},
      {"checks",
       {{"fit_label", [](Scenario& s, const std::string& v) { s.fit_label = v; }},
        {"paper_exponent", [](Scenario& s, const std::string& v) { s.paper_exponent = parse_number(v); }},
        {"band", [](Scenario& s, const std::string& v) { s.band = parse_number(v); }},
        {"fit_t_lo", [](Scenario& s, const std::string& v) { s.fit_t_lo = parse_number(v); }},
        {"fit_t_hi", [](Scenario& s, const std::string& v) { s.fit_t_hi = parse_number(v); }},
        {"must_pass", [](Scenario& s, const std::string& v) { s.must_pass = parse_bool(v); }}}},
      {"profiles",
       {{"times", [](Scenario& s, const std::string& v) { s.profile_times = parse_list(v); }},
        {"p_values", [](Scenario& s, const std::string& v) { s.p_values = parse_list(v, true); }},
        {"h", [](Scenario& s, const std::string& v) { s.profile_h = parse_number(v); }}}},
      {"converge",
       {{"levels", [](Scenario& s, const std::string& v) { s.levels = static_cast<int>(parse_count(v)); }},
        {"t_check", [](Scenario& s, const std::string& v) { s.t_check = parse_number(v); }},
        {"mode",
         [](Scenario& s, const std::string& v) {
           if (v == "evolve") s.converge_mode = ConvergeMode::evolve;
           else if (v == "elliptic") s.converge_mode = ConvergeMode::elliptic;
           else throw std::invalid_argument("'" + v + "' is not one of evolve, elliptic");
         }}}},
  };
  return table;
}

const char* required_keys[][2] = {
    {"riemann", "u_minus"}, {"riemann", "u_plus"}, {"grid", "n"}, {"grid", "length"}, {"time", "t_final"}};

void validate(const Scenario& s, const std::map<std::string, int>& seen,
              std::vector<std::string>& errors) {
  for (const auto& rk : required_keys) {
    const std::string key = std::string(rk[0]) + "." + rk[1];
    if (!seen.count(key)) errors.push_back("missing required key " + key);
  }
  if (s.flux_name == "polynomial" && s.f_coefficients.empty())
    errors.push_back("flux.name = polynomial needs flux.f_coefficients");
  if (s.flux_name != "polynomial" && (!s.f_coefficients.empty() || !s.g_coefficients.empty()))
    errors.push_back("flux coefficients are only allowed with flux.name = polynomial");
  if (s.alpha <= 0) errors.push_back("flux.alpha must be positive");

  if (seen.count("grid.n") && s.n < 16) errors.push_back("grid.n must be >= 16");
  if (seen.count("grid.length") && !(s.length > 0)) errors.push_back("grid.length must be positive");
  if (s.ny > 0) {
    if (s.ny < 4 || !std::has_single_bit(s.ny)) errors.push_back("grid.ny must be a power of two >= 4");
    if (!(s.ly > 0)) errors.push_back("grid.ly must be positive when grid.ny is set");
  } else if (seen.count("grid.ly")) {
    errors.push_back("grid.ly given without grid.ny");
  }

  if (s.family == InitialFamily::profile && !(s.t0 > 0)) errors.push_back("initial.t0 must be positive");
  if (!(s.tanh_width > 0)) errors.push_back("initial.tanh_width must be positive");
  if (!(s.bump_width > 0)) errors.push_back("initial.bump_width must be positive");
  if (s.step_center < 0) errors.push_back("initial.step_center must be nonnegative");
  if (s.sine_amplitude != 0 && s.ny == 0) errors.push_back("initial.sine_amplitude needs a 2D grid");

  if (s.t_final < 0) errors.push_back("time.t_final must be nonnegative");
  if (s.diag_interval < 0) errors.push_back("time.diag_interval must be nonnegative");
  if (s.t_final > 0 && s.diag_interval > s.t_final) errors.push_back("time.diag_interval exceeds time.t_final");
  if (!(s.cfl > 0 && s.cfl <= 1)) errors.push_back("time.cfl must lie in (0, 1]");
  for (double t : s.snapshot_times)
    if (t < 0 || t > s.t_final) errors.push_back("snapshot time " + format_double(t) + " outside [0, t_final]");

  if (s.ny > 0 && s.formulation != FormulationChoice::coupled)
    errors.push_back("run.formulation must be coupled for 2D scenarios");
  if (!(s.band > 0)) errors.push_back("checks.band must be positive");
  if (s.levels < 3) errors.push_back("converge.levels must be >= 3");
  if (!(s.t_check > 0)) errors.push_back("converge.t_check must be positive");
  if (!(s.profile_h > 0)) errors.push_back("profiles.h must be positive");
  for (double p : s.p_values)
    if (!(p >= 1)) errors.push_back("profiles.p_values entries must be >= 1");

  FluxPair flux;
  try {
    flux = s.flux();
  } catch (const Error& e) {
    errors.push_back(e.what());
    return;
  }
  if (!seen.count("riemann.u_minus") || !seen.count("riemann.u_plus")) return;
  const auto report = check_assumptions(flux, s.u_minus, s.u_plus, 257);
  for (const auto& v : report.violations)
    if (v.find("u_-") == std::string::npos) errors.push_back("flux assumption " + v);
  try {
    RiemannData::make(flux, s.u_minus, s.u_plus);
  } catch (const AssumptionError& e) {
    errors.push_back(e.what());
    return;
  }
  // The fan must stay inside the domain.
  if (s.length > 0 && s.t_final > 0) {
    const double reach = flux.f.d1(s.u_plus) * s.t_final + 10.0 * std::sqrt(s.t_final);
    if (s.length < reach)
      errors.push_back("grid.length " + format_double(s.length) + " < f'(u_+) t_final + 10 sqrt(t_final) = " +
                       format_double(reach));
  }
}

}  // namespace

ScenarioError::ScenarioError(std::vector<std::string> problems)
    : ConfigError([&] {
        std::string m = "invalid scenario:";
        for (const auto& p : problems) m += "\n  " + p;
        return m;
      }()),
      problems_(std::move(problems)) {}

FluxPair Scenario::flux() const {
  if (flux_name == "polynomial") {
    FluxPair p;
    p.f = Flux(f_coefficients);
    p.g = Flux(g_coefficients.empty() ? f_coefficients : g_coefficients);
    p.alpha = alpha;
    p.name = "polynomial";
    return p;
  }
  FluxPair p = FluxPair::by_name(flux_name);
  return p;
}

RiemannData Scenario::riemann() const { return RiemannData::make(flux(), u_minus, u_plus); }

const char* to_string(InitialFamily f) {
  switch (f) {
    case InitialFamily::tanh: return "tanh";
    case InitialFamily::step: return "step";
    default: return "profile";
  }
}

const char* to_string(FormulationChoice f) {
  switch (f) {
    case FormulationChoice::convolution: return "convolution";
    case FormulationChoice::both: return "both";
    default: return "coupled";
  }
}

std::string Scenario::canonical_json() const {
  using nlohmann::json;
  json p = json::array();
  for (double v : p_values) p.push_back(std::isinf(v) ? json("inf") : json(v));
  json j = {
      {"name", name},
      {"flux", {{"name", flux_name}, {"f_coefficients", f_coefficients}, {"g_coefficients", g_coefficients}, {"alpha", alpha}}},
      {"riemann", {{"u_minus", u_minus}, {"u_plus", u_plus}}},
      {"grid", {{"n", n}, {"length", length}, {"ny", ny}, {"ly", ly}}},
      {"initial",
       {{"family", to_string(family)}, {"t0", t0}, {"tanh_width", tanh_width}, {"step_center", step_center},
        {"bump_amplitude", bump_amplitude}, {"bump_center", bump_center}, {"bump_width", bump_width},
        {"sine_amplitude", sine_amplitude}, {"noise_amplitude", noise_amplitude}, {"seed", seed}}},
      {"time", {{"t_final", t_final}, {"snapshots", snapshot_times}, {"diag_interval", diag_interval}, {"cfl", cfl}}},
      {"run", {{"formulation", to_string(formulation)}}},
      {"checks",
       {{"fit_label", fit_label}, {"paper_exponent", paper_exponent}, {"band", band}, {"fit_t_lo", fit_t_lo},
        {"fit_t_hi", fit_t_hi}, {"must_pass", must_pass}}},
      {"profiles", {{"times", profile_times}, {"p_values", p}, {"h", profile_h}}},
      {"converge",
       {{"levels", levels}, {"t_check", t_check},
        {"mode", converge_mode == ConvergeMode::elliptic ? "elliptic" : "evolve"}}},
  };
  return j.dump();
}

std::string config_hash(const Scenario& s) { return sha256_hex(s.canonical_json()); }

Scenario parse_scenario(const std::string& text) {
  Scenario s;
  std::vector<std::string> errors;
  std::map<std::string, int> seen;  // "section.key" -> line
  const auto& table = key_table();
  const std::map<std::string, Setter>* section = nullptr;
  std::string section_name;

  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const auto hash = raw.find_first_of("#;");
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const std::string where = "line " + std::to_string(line) + ": ";
    if (body.front() == '[') {
      if (body.back() != ']') {
        errors.push_back(where + "malformed section header '" + body + "'");
        section = nullptr;
        continue;
      }
      section_name = trim(body.substr(1, body.size() - 2));
      const auto it = table.find(section_name);
      section = it == table.end() ? nullptr : &it->second;
      if (!section) errors.push_back(where + "unknown section [" + section_name + "]");
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      errors.push_back(where + "expected key = value");
      continue;
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (section_name.empty()) {
      errors.push_back(where + "key '" + key + "' outside any section");
      continue;
    }
    if (!section) continue;  // already reported the section
    const auto it = section->find(key);
    if (it == section->end()) {
      errors.push_back(where + "unknown key '" + key + "' in [" + section_name + "]");
      continue;
    }
    const std::string full = section_name + "." + key;
    if (const auto prev = seen.find(full); prev != seen.end()) {
      errors.push_back(where + "duplicate key " + full + " (first set on line " + std::to_string(prev->second) + ")");
      continue;
    }
    seen[full] = line;
    try {
      it->second(s, value);
    } catch (const std::exception& e) {
      errors.push_back(where + full + ": " + e.what());
    }
  }
  validate(s, seen, errors);
  if (!errors.empty()) throw ScenarioError(std::move(errors));
  if (s.diag_interval == 0 && s.t_final > 0) s.diag_interval = s.t_final / 100.0;
  return s;
}

Scenario load_scenario(const std::string& path) {
  Scenario s = parse_scenario(read_file(path));
  if (s.name.empty()) s.name = std::filesystem::path(path).stem().string();
  return s;
}

}  // namespace radgas
