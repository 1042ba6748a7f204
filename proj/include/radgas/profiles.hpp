#pragma once

#include <array>
#include <string>
#include <vector>

#include "radgas/flux_model.hpp"
#include "radgas/grid.hpp"
#include "radgas/hopf_cole.hpp"
#include "radgas/jet.hpp"

namespace radgas {

// Exact centered rarefaction on the half-line: u_- left of f'(u_-) t, u_+
// right of f'(u_+) t, (f')^{-1}(x/t) in between. Throws DomainError for t <= 0.
double exact_rarefaction(const FluxPair& flux, const RiemannData& data, double x, double t);

// Velocity-side data of the smoothed problem: (f'(u_-), f'(u_+)), or the
// symmetric (-f'(u_+), f'(u_+)) when f'(u_-) = 0 so that the smoothed
// solution vanishes at x = 0.
HopfCole smoothing_for(const FluxPair& flux, const RiemannData& data);

// w = (f')^{-1}(w~) with all derivatives of total order <= 4. The inverse map
// is expanded by series reversion of f' around w, then composed with the jet
// of w~.
class SmoothProfile {
 public:
  SmoothProfile(const FluxPair& flux, const RiemannData& data);

  double value(double x, double t) const;
  // d^k_x d^l_t w, k + l <= 4, t > 0.
  double derivative(double x, double t, int k, int l) const;
  Jet2 jet(double x, double t) const;
  // w(x,t) - u_- to full relative precision, for f'(u_-) > 0 (solves
  // f'(u_- + eta) - f'(u_-) = w~ - w_- on the exact expansion about u_-).
  double gap_over_left(double x, double t) const;
  const HopfCole& smoothing() const { return hc_; }

 private:
  FluxPair flux_;
  RiemannData data_;
  HopfCole hc_;
  double lo_;
  double hi_;
};

double smooth_profile_w(const FluxPair& flux, const RiemannData& data, double x, double t,
                        int k = 0, int l = 0);

// Every profile quantity on a half-line grid at one time.
struct ProfileBundle {
  HalfLineGrid grid;
  double t = 0.0;
  std::vector<double> r;
  // d^k_x d^l_t w~ and of w, stored at Jet2::index(k, l).
  std::array<std::vector<double>, Jet2::kSize> w_tilde_derivs;
  std::array<std::vector<double>, Jet2::kSize> w_derivs;
  std::vector<double> w;
  std::vector<double> u_tilde;
  std::vector<double> q_tilde;
  std::vector<double> u_hat;
  std::vector<double> q_hat;
  std::vector<double> R1;
  std::vector<double> R2;
  // w(0,t) - u_-, w_xx(0,t), w_t(0,t).
  double boundary_gap = 0.0;
  double w_xx_at_0 = 0.0;
  double w_t_at_0 = 0.0;

  const std::vector<double>& w_tilde(int k, int l) const { return w_tilde_derivs[Jet2::index(k, l)]; }
  const std::vector<double>& w_deriv(int k, int l) const { return w_derivs[Jet2::index(k, l)]; }
};

// u~ = w - (w(0,t) - u_-) e^{-x}, q~ = -w_x - w_xx(0,t) e^{-x}, and the
// residual forcings
//   R1 = q^_x + u^_t + (f(u~ + u^) - f(u~))_x - f'''(w)/f''(w) w_x^2
//   R2 = u^_x + q^ - u~_xxx - u^_xxx - q^_xx  (= -u~_xxx).
// When f'(u_-) = 0 the boundary gap is zero and R1 reduces to the f''' term.
ProfileBundle modified_profile(const FluxPair& flux, const RiemannData& data,
                               const HalfLineGrid& grid, double t, Exec exec = Exec::parallel);

// Convenience: (R1, R2) on the grid.
std::pair<std::vector<double>, std::vector<double>> residuals_R1_R2(
    const FluxPair& flux, const RiemannData& data, const HalfLineGrid& grid, double t);

// One measured norm series checked against a bound (1+t)^{exponent}.
struct PropertyFit {
  std::string label;
  double p = 0.0;              // Lebesgue exponent; infinity for sup
  double fitted_exponent = 0.0;
  double fitted_log_constant = 0.0;
  double r_squared = 0.0;
  double paper_exponent = 0.0;
  double band = 0.0;
  // "sharp": |fitted - paper| <= band; "bound": fitted <= paper + band.
  std::string comparison;
  bool pass = false;
};

struct PropertyReport {
  std::vector<double> times;
  std::vector<PropertyFit> fits;
  std::vector<double> min_w_x;          // per time
  std::vector<double> min_u_tilde_x;    // per time
  std::vector<double> boundary_gap;     // w(0,t) - u_-
  double boundary_rate = 0.0;           // fitted c in gap ~ C e^{-c t}; 0 if not fitted
  bool boundary_gap_nonnegative = true;
  bool monotone = true;
  bool pass = false;

  std::string to_json() const;
};

struct PropertySuiteOptions {
  double h = 0.05;
  double band = 0.1;
  // Fits use samples with t >= fit_from only.
  double fit_from = 5.0;
};

// Samples the profile at each time on [0, f'(u_+) t + 30 sqrt(1+t) + 40] and
// fits log-norm against log(1+t) for w - r, w_x, w_t and higher derivatives
// in each requested L^p (p = infinity allowed).
PropertyReport profile_property_suite(const FluxPair& flux, const RiemannData& data,
                                      const std::vector<double>& times,
                                      const std::vector<double>& p_values,
                                      const PropertySuiteOptions& options = {});

// Grid length used by the property suite at time t.
double profile_domain_length(const FluxPair& flux, const RiemannData& data, double t);

}  // namespace radgas
