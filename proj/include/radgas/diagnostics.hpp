#pragma once

#include <map>
#include <string>
#include <vector>

#include "radgas/evolve.hpp"
#include "radgas/grid.hpp"
#include "radgas/profiles.hpp"

namespace radgas {

// ---------------------------------------------------------------- norms ----

// Composite trapezoid L^1 / L^2 on a uniform half-line grid, max for L^inf.
double norm_l1(const std::vector<double>& f, double h);
double norm_l2(const std::vector<double>& f, double h);
double norm_linf(const std::vector<double>& f);
// p = infinity selects the sup norm.
double lp_norm(const std::vector<double>& f, double h, double p);

// Trapezoid in x, rectangle (periodic) in y.
double norm_l2_2d(const std::vector<double>& f, const HalfPlaneGrid& grid);

// k-th derivative by repeated centered differences (one-sided at the ends), k <= 3.
std::vector<double> difference(const std::vector<double>& f, double h, int k);

// Gradient of a half-plane field: (D_x f, D_y f) with centered stencils.
std::pair<std::vector<double>, std::vector<double>> gradient_2d(const std::vector<double>& f,
                                                                const HalfPlaneGrid& grid);

// L^1, L^2, L^inf of f and the L^2 / L^inf of its first `max_order`
// differences, keyed "<name>_L1", "<name>x_L2", "<name>xx_Linf", ... plus the
// H^k norm "<name>_H<k>".
std::map<std::string, double> compute_norms(const std::string& name, const std::vector<double>& f,
                                            double h, int max_order);

// ------------------------------------------------------------- series ----

struct NormSeries {
  std::vector<double> times;
  std::map<std::string, std::vector<double>> norms;

  // Appends one row; every row must carry the same labels.
  void append(double t, const std::map<std::string, double>& row);
  const std::vector<double>& at(const std::string& label) const;
  std::string to_csv() const;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares y = slope x + intercept.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

struct DecayFit {
  std::string label;
  double t_lo = 0.0;
  double t_hi = 0.0;
  int samples = 0;
  double fitted_exponent = 0.0;
  double fitted_log_constant = 0.0;
  double r_squared = 0.0;
  double paper_exponent = 0.0;
  double band = 0.0;
  bool pass = false;

  // {label, window, fitted_exponent, paper_exponent, band, pass, ...}
  std::string to_json() const;
};

inline constexpr int kMinFitSamples = 6;

// Slope of log(value) against log(1 + t) over samples with t in [t_lo, t_hi].
// Throws FitError for fewer than `min_samples` samples or a nonpositive value.
DecayFit fit_power_law(const std::vector<double>& times, const std::vector<double>& values,
                       double t_lo, double t_hi, int min_samples = kMinFitSamples);

// Same on a labelled series; pass = |fitted - paper| <= band.
DecayFit fit_decay(const NormSeries& series, const std::string& label, double t_lo, double t_hi,
                   double paper_exponent, double band, int min_samples = kMinFitSamples);

// Default window [t_final/10, t_final].
DecayFit fit_decay(const NormSeries& series, const std::string& label, double paper_exponent,
                   double band);

// ------------------------------------------------------ decomposition ----

struct Perturbation1D {
  std::vector<double> V;  // U - u~
  std::vector<double> P;  // Q - q~
};

struct Perturbation2D {
  std::vector<double> v;   // u - U
  std::vector<double> p1;  // q1 - Q
  std::vector<double> p2;  // q2
  std::vector<double> divp;
};

Perturbation1D decompose_perturbations(const State1D& state, const ProfileBundle& profile);
Perturbation2D decompose_perturbations(const State2D& state, const State1D& reference);

// --------------------------------------------------------- properties ----

struct MonotonicityRecord {
  double min_u_x = 0.0;
  double max_q = 0.0;
  double u_x_tolerance = 0.0;  // -10 h
  double q_tolerance = 1e-8;
  bool hypothesis_met = true;  // data nondecreasing
  bool pass = false;
  std::string status;          // "pass", "fail" or "hypothesis-unmet"
};

// min discrete U_x and max Q against -10 h and 1e-8. `initial_monotone` says
// whether the run started from nondecreasing data.
MonotonicityRecord check_monotonicity_and_signs(const State1D& state, bool initial_monotone = true);

struct L1GrowthRecord {
  double constant = 0.0;          // sup_t ratio
  std::vector<double> ratio;      // (|V|_1 - |V0|_1) / (delta log(2+t)) per sample
  double tail_slope = 0.0;        // d ratio / d log t over the final half
  double tail_tolerance = 0.0;
  bool finite = false;
  bool tail_nonincreasing = false;
  bool pass = false;
};

// Uses series "V_L1". `tail_tolerance` bounds the allowed increase of the
// ratio over the final half relative to its magnitude.
L1GrowthRecord check_l1_growth(const NormSeries& series, double delta,
                               double tail_tolerance = 0.05);

struct TrendRecord {
  std::string label;
  double first = 0.0;
  double terminal = 0.0;
  double tail_slope = 0.0;  // slope of log value vs log t on the final quarter
  bool decreasing = false;
};

// Final-quarter trend of each listed sup-norm series.
std::vector<TrendRecord> check_2d_decay(const NormSeries& series,
                                        const std::vector<std::string>& labels);

}  // namespace radgas
