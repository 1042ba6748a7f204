#pragma once

#include <string>
#include <vector>

#include "radgas/diagnostics.hpp"
#include "radgas/evolve.hpp"
#include "radgas/scenario.hpp"

namespace radgas {

// Uniform stepping: dt = t_final / steps, diagnostics every `diag_every`
// steps (so sample times are exact multiples of the cadence).
struct TimePlan {
  long steps = 0;
  double dt = 0.0;
  long diag_every = 1;
  std::vector<long> snapshot_steps;
};

// `max_dt` is the admissible step of the initial state; 0.9 of it is used.
TimePlan plan_time(const Scenario& s, double max_dt);

std::vector<double> initial_data_1d(const Scenario& s, const HalfLineGrid& grid);
std::vector<double> initial_data_2d(const Scenario& s, const HalfPlaneGrid& grid);

struct Trajectory1D {
  Formulation formulation = Formulation::coupled;
  TimePlan plan;
  std::vector<State1D> snapshots;
  NormSeries series;
  State1D final_state;
  bool initial_monotone = true;
  double min_u_x = 0.0;   // over every diagnostic sample
  double max_q = 0.0;
  bool aborted = false;
  std::string abort_reason;
};

// Integrates the half-line problem. Norms of V = U - u~(., t + t0) and
// P = Q - q~ are sampled on the cadence; errors during a step end the run
// with `aborted` set and the samples so far kept. `fault_step` >= 1 feeds a
// NaN into that step (fault injection for the abort path).
Trajectory1D simulate_1d(const Scenario& s, Formulation form, Exec exec = Exec::parallel,
                         long fault_step = -1);

struct Trajectory2D {
  TimePlan plan;
  std::vector<State2D> snapshots;
  std::vector<State1D> reference_snapshots;  // planar solution at the same times
  NormSeries series;
  double max_curl = 0.0;             // matched stencils, over every sample
  double max_curl_fourth_order = 0.0;
  double max_y_spread = 0.0;         // max_x (max_y u - min_y u)
  bool aborted = false;
  std::string abort_reason;
};

// Integrates the half-plane problem together with the planar reference
// started from the y-independent part of the data; v = u - U.
Trajectory2D simulate_2d(const Scenario& s, Exec exec = Exec::parallel);

struct RunOptions {
  std::string out_dir;  // empty: scenario output directory
  bool dry_run = false;
  bool quiet = false;
  long fault_step = -1;  // see simulate_1d
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailed = 1;
inline constexpr int kExitAborted = 2;
inline constexpr int kExitInvalid = 3;

// `radgas run`: snapshots, norm series, fits, properties and manifest.
int run_scenario(const Scenario& s, const RunOptions& opt);

// `radgas profiles`: profile CSVs and the property-suite report.
int run_profiles(const Scenario& s, const RunOptions& opt);

struct ConvergenceLevel {
  std::size_t n = 0;
  double h = 0.0;
  double dt = 0.0;
  long steps = 0;
};

struct ConvergenceReport {
  std::string mode;                  // "evolve" or "elliptic"
  std::vector<ConvergenceLevel> levels;
  std::vector<std::string> fields;
  std::vector<std::vector<double>> errors;  // [field][pair]
  std::vector<std::vector<double>> orders;  // [field][pair - 1]
  bool degenerate = false;   // every error at round-off
  bool unresolved = false;   // some observed order below 1
  std::string to_json() const;
};

inline constexpr double kDegenerateError = 1e-12;

// Fills orders = log2(e_k / e_{k+1}) per field; marks the report degenerate
// when every error is below kDegenerateError, unresolved when an order < 1.
void assess_orders(ConvergenceReport& r);

// Self-convergence at t_check with dt proportional to h (evolve mode), or the
// half-line elliptic solve against its closed form (elliptic mode).
ConvergenceReport convergence_study(const Scenario& s, Exec exec = Exec::parallel);

// `radgas converge`.
int run_converge(const Scenario& s, const RunOptions& opt);

}  // namespace radgas
