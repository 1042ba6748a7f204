#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "radgas/errors.hpp"
#include "radgas/evolve.hpp"
#include "radgas/flux_model.hpp"

namespace radgas {

enum class InitialFamily { profile, tanh, step };
enum class FormulationChoice { coupled, convolution, both };
enum class ConvergeMode { evolve, elliptic };

// A validated run description. See docs/formats.md for the file syntax.
struct Scenario {
  std::string name;

  // [flux]
  std::string flux_name = "burgers";
  std::vector<double> f_coefficients;  // used when flux_name = polynomial
  std::vector<double> g_coefficients;
  double alpha = 1.0;

  // [riemann]
  double u_minus = 0.0;
  double u_plus = 0.0;

  // [grid]
  std::size_t n = 0;
  double length = 0.0;
  std::size_t ny = 0;  // 0 selects the half-line
  double ly = 0.0;

  // [initial]
  InitialFamily family = InitialFamily::profile;
  double t0 = 1.0;
  double tanh_width = 5.0;
  double step_center = 10.0;
  double bump_amplitude = 0.0;
  double bump_center = 0.0;
  double bump_width = 1.0;
  double sine_amplitude = 0.0;
  double noise_amplitude = 0.0;
  std::uint64_t seed = 0;

  // [time]
  double t_final = 0.0;
  std::vector<double> snapshot_times;
  double diag_interval = 0.0;  // 0: t_final / 100
  double cfl = kDefaultCfl;

  // [run]
  FormulationChoice formulation = FormulationChoice::coupled;
  std::string output_dir = "out";

  // [checks]
  std::string fit_label = "V_Linf";
  double paper_exponent = -0.5;
  double band = 0.15;
  double fit_t_lo = -1.0;  // negative: t_final / 10
  double fit_t_hi = -1.0;  // negative: t_final
  bool must_pass = false;

  // [profiles]
  std::vector<double> profile_times;
  std::vector<double> p_values = {1.0, 2.0, std::numeric_limits<double>::infinity()};
  double profile_h = 0.05;

  // [converge]
  int levels = 3;
  double t_check = 5.0;
  ConvergeMode converge_mode = ConvergeMode::evolve;

  FluxPair flux() const;
  RiemannData riemann() const;
  bool is_2d() const { return ny > 0; }
  // Canonical JSON of every field (sorted keys, full precision).
  std::string canonical_json() const;
};

// Every problem found while reading a scenario, in file order.
class ScenarioError : public ConfigError {
 public:
  explicit ScenarioError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

// Parses sectioned `key = value` text. Unknown sections/keys, duplicates,
// malformed numbers, missing required keys and assumption violations are all
// collected and thrown together as ScenarioError.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

// SHA-256 of the canonical JSON, hex encoded.
std::string config_hash(const Scenario& s);

const char* to_string(InitialFamily f);
const char* to_string(FormulationChoice f);

}  // namespace radgas
