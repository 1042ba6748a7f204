#pragma once

#include <string>
#include <vector>

namespace radgas {

// Polynomial flux f(u) = sum_k c_k u^k with exact derivatives of any order.
class Flux {
 public:
  Flux() = default;
  explicit Flux(std::vector<double> coefficients);

  // d^order f / du^order at u.
  double eval(double u, int order = 0) const;
  double operator()(double u) const { return eval(u, 0); }
  double d1(double u) const { return eval(u, 1); }
  double d2(double u) const { return eval(u, 2); }
  double d3(double u) const { return eval(u, 3); }

  const std::vector<double>& coefficients() const { return coeffs_; }

 private:
  std::vector<double> coeffs_;
  // derivs_[m][k] = coefficient of u^k in d^m f / du^m.
  std::vector<std::vector<double>> derivs_;
};

// The nonlinear fluxes f (x-direction) and g (y-direction) with the
// convexity floor alpha of f.
struct FluxPair {
  Flux f;
  Flux g;
  double alpha = 1.0;
  std::string name;

  // f = g = u^2/2.
  static FluxPair burgers();
  // f = u^2/2 + u^4/12 (f''' != 0), g = u^2/2.
  static FluxPair quartic();
  // Looks up "burgers" or "quartic"; throws ConfigError otherwise.
  static FluxPair by_name(const std::string& name);
};

enum class Regime { fprime_positive, fprime_zero };

const char* to_string(Regime r);

// Boundary state u_minus and far-field state u_plus of the half-space problem.
struct RiemannData {
  double u_minus = 0.0;
  double u_plus = 0.0;
  double delta = 0.0;
  Regime regime = Regime::fprime_positive;

  // Validates 0 <= f'(u-) < f'(u+); throws AssumptionError naming the
  // violated inequality.
  static RiemannData make(const FluxPair& flux, double u_minus, double u_plus);
};

struct AssumptionReport {
  double sample_lo = 0.0;
  double sample_hi = 0.0;
  int samples = 0;
  double min_fpp = 0.0;
  double alpha = 0.0;
  double abs_f0 = 0.0;
  double abs_fp0 = 0.0;
  double fprime_minus = 0.0;
  double fprime_plus = 0.0;
  bool pass = false;
  std::vector<std::string> violations;

  // Deterministic JSON rendering.
  std::string to_json() const;
};

inline constexpr double kNormalizationTolerance = 1e-14;

// Samples f'' on [min(u-,0), u+ + margin] and checks convexity, the
// normalization f(0) = f'(0) = 0 and the case-(b) ordering of f'(u+-).
AssumptionReport check_assumptions(const FluxPair& flux, double u_minus,
                                   double u_plus, int samples,
                                   double margin = 0.1);

struct StateInterval {
  double lo;
  double hi;
};

inline constexpr double kInverseTolerance = 1e-12;
inline constexpr int kInverseMaxIterations = 200;

// Solves f'(u) = xi for u in the bracket (safeguarded Newton with bisection
// fallback). Throws OutOfRangeError when xi is outside f'(bracket).
double inverse_fprime(const Flux& f, double xi, StateInterval bracket);

// Same, but grows a bracket around `guess` until it contains the root.
double inverse_fprime(const Flux& f, double xi, double guess = 0.0);

}  // namespace radgas
