#include "radgas/flux_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "radgas/errors.hpp"

namespace radgas {

Flux::Flux(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {
  derivs_.push_back(coeffs_);
  while (derivs_.back().size() > 1) {
    const auto& prev = derivs_.back();
    std::vector<double> next(prev.size() - 1);
    for (std::size_t k = 1; k < prev.size(); ++k) next[k - 1] = static_cast<double>(k) * prev[k];
    derivs_.push_back(std::move(next));
  }
}

double Flux::eval(double u, int order) const {
  if (order < 0) throw UnsupportedOrderError("negative derivative order");
  if (static_cast<std::size_t>(order) >= derivs_.size()) return 0.0;
  const auto& c = derivs_[static_cast<std::size_t>(order)];
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * u + c[k];
  return acc;
}

FluxPair FluxPair::burgers() {
  return FluxPair{Flux({0.0, 0.0, 0.5}), Flux({0.0, 0.0, 0.5}), 1.0, "burgers"};
}

FluxPair FluxPair::quartic() {
  return FluxPair{Flux({0.0, 0.0, 0.5, 0.0, 1.0 / 12.0}), Flux({0.0, 0.0, 0.5}), 1.0,
                  "quartic"};
}

FluxPair FluxPair::by_name(const std::string& name) {
  if (name == "burgers") return burgers();
  if (name == "quartic") return quartic();
  throw ConfigError("unknown flux name '" + name + "' (expected burgers, quartic or polynomial)");
}

const char* to_string(Regime r) {
  return r == Regime::fprime_zero ? "fprime_zero" : "fprime_positive";
}

RiemannData RiemannData::make(const FluxPair& flux, double u_minus, double u_plus) {
  const double fm = flux.f.d1(u_minus);
  const double fp = flux.f.d1(u_plus);
  if (!(fm < fp)) throw AssumptionError("case (b) requires f'(u_-) < f'(u_+): f'(u_-) < f'(u_+) violated");
  if (fm < -kNormalizationTolerance) throw AssumptionError("case (b) requires 0 <= f'(u_-): 0 <= f'(u_-) violated");
  RiemannData d;
  d.u_minus = u_minus;
  d.u_plus = u_plus;
  d.delta = std::abs(u_plus - u_minus);
  d.regime = std::abs(fm) <= kNormalizationTolerance ? Regime::fprime_zero : Regime::fprime_positive;
  return d;
}

AssumptionReport check_assumptions(const FluxPair& flux, double u_minus, double u_plus,
                                   int samples, double margin) {
  if (samples < 2) throw ConfigError("check_assumptions needs samples >= 2");
  AssumptionReport rep;
  rep.samples = samples;
  rep.alpha = flux.alpha;
  rep.sample_lo = std::min(u_minus, 0.0);
  rep.sample_hi = std::max(u_plus, u_minus) + margin;
  rep.min_fpp = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double u = rep.sample_lo + (rep.sample_hi - rep.sample_lo) * i / (samples - 1);
    rep.min_fpp = std::min(rep.min_fpp, flux.f.d2(u));
  }
  rep.abs_f0 = std::abs(flux.f(0.0));
  rep.abs_fp0 = std::abs(flux.f.d1(0.0));
  rep.fprime_minus = flux.f.d1(u_minus);
  rep.fprime_plus = flux.f.d1(u_plus);

  if (!(flux.alpha > 0.0)) rep.violations.emplace_back("alpha > 0 violated");
  if (rep.min_fpp < flux.alpha) rep.violations.emplace_back("f''(u) >= alpha violated");
  if (rep.abs_f0 > kNormalizationTolerance) rep.violations.emplace_back("f(0) = 0 violated");
  if (rep.abs_fp0 > kNormalizationTolerance) rep.violations.emplace_back("f'(0) = 0 violated");
  if (!(rep.fprime_minus < rep.fprime_plus)) rep.violations.emplace_back("f'(u_-) < f'(u_+) violated");
  if (rep.fprime_minus < -kNormalizationTolerance) rep.violations.emplace_back("0 <= f'(u_-) violated");
  rep.pass = rep.violations.empty();
  return rep;
}

std::string AssumptionReport::to_json() const {
  nlohmann::json j;
  j["sample_interval"] = {sample_lo, sample_hi};
  j["samples"] = samples;
  j["min_fpp"] = min_fpp;
  j["alpha"] = alpha;
  j["abs_f0"] = abs_f0;
  j["abs_fp0"] = abs_fp0;
  j["fprime_minus"] = fprime_minus;
  j["fprime_plus"] = fprime_plus;
  j["pass"] = pass;
  j["violations"] = violations;
  return j.dump(2);
}

double inverse_fprime(const Flux& f, double xi, StateInterval bracket) {
  double lo = bracket.lo;
  double hi = bracket.hi;
  if (lo > hi) std::swap(lo, hi);
  const double flo = f.d1(lo) - xi;
  const double fhi = f.d1(hi) - xi;
  if (std::abs(flo) <= kInverseTolerance) return lo;
  if (std::abs(fhi) <= kInverseTolerance) return hi;
  if (flo > 0.0 || fhi < 0.0) {
    std::ostringstream os;
    os.precision(17);
    os << "xi=" << xi << " outside f'([" << lo << ", " << hi << "]) = [" << f.d1(lo) << ", "
       << f.d1(hi) << "]";
    throw OutOfRangeError(os.str());
  }
  // Initial guess by linear interpolation of f' across the bracket.
  double u = lo + (hi - lo) * (-flo) / (fhi - flo);
  for (int it = 0; it < kInverseMaxIterations; ++it) {
    const double r = f.d1(u) - xi;
    if (std::abs(r) <= kInverseTolerance) return u;
    if (r < 0.0) lo = u; else hi = u;
    const double slope = f.d2(u);
    double next = slope > 0.0 ? u - r / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == u) return u;
    u = next;
  }
  return u;
}

double inverse_fprime(const Flux& f, double xi, double guess) {
  double step = 1.0;
  double lo = guess - step;
  double hi = guess + step;
  for (int i = 0; i < 200 && f.d1(lo) > xi; ++i) {
    step *= 2.0;
    lo = guess - step;
  }
  step = 1.0;
  for (int i = 0; i < 200 && f.d1(hi) < xi; ++i) {
    step *= 2.0;
    hi = guess + step;
  }
  return inverse_fprime(f, xi, StateInterval{lo, hi});
}

}  // namespace radgas
