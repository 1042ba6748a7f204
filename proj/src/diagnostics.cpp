#include "radgas/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "radgas/elliptic.hpp"
#include "radgas/errors.hpp"

namespace radgas {

double norm_l1(const std::vector<double>& f, double h) {
  if (f.empty()) return 0.0;
  double acc = 0.0;
  for (double v : f) acc += std::abs(v);
  acc -= 0.5 * (std::abs(f.front()) + std::abs(f.back()));
  return acc * h;
}

double norm_l2(const std::vector<double>& f, double h) {
  if (f.empty()) return 0.0;
  double acc = 0.0;
  for (double v : f) acc += v * v;
  acc -= 0.5 * (f.front() * f.front() + f.back() * f.back());
  return std::sqrt(acc * h);
}

double norm_linf(const std::vector<double>& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

double lp_norm(const std::vector<double>& f, double h, double p) {
  if (std::isinf(p)) return norm_linf(f);
  if (p == 1.0) return norm_l1(f, h);
  if (p == 2.0) return norm_l2(f, h);
  if (!(p >= 1.0)) throw ConfigError("L^p norm needs p >= 1");
  if (f.empty()) return 0.0;
  double acc = 0.0;
  for (double v : f) acc += std::pow(std::abs(v), p);
  acc -= 0.5 * (std::pow(std::abs(f.front()), p) + std::pow(std::abs(f.back()), p));
  return std::pow(acc * h, 1.0 / p);
}

double norm_l2_2d(const std::vector<double>& f, const HalfPlaneGrid& grid) {
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.nx; ++i) {
    const double w = (i == 0 || i == grid.nx - 1) ? 0.5 : 1.0;
    for (std::size_t j = 0; j < grid.ny; ++j) {
      const double v = f[grid.index(i, j)];
      acc += w * v * v;
    }
  }
  return std::sqrt(acc * grid.hx * grid.hy);
}

std::vector<double> difference(const std::vector<double>& f, double h, int k) {
  if (k < 0 || k > 3) throw UnsupportedOrderError("difference order must be 0..3");
  std::vector<double> d = f;
  for (int i = 0; i < k; ++i) d = centered_difference(d, h);
  return d;
}

std::pair<std::vector<double>, std::vector<double>> gradient_2d(const std::vector<double>& f,
                                                                const HalfPlaneGrid& grid) {
  const std::size_t nx = grid.nx, ny = grid.ny;
  std::vector<double> gx(f.size()), gy(f.size()), col(nx);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) col[i] = f[i * ny + j];
    const auto d = centered_difference(col, grid.hx);
    for (std::size_t i = 0; i < nx; ++i) gx[i * ny + j] = d[i];
  }
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j)
      gy[i * ny + j] = (f[i * ny + (j + 1) % ny] - f[i * ny + (j + ny - 1) % ny]) / (2.0 * grid.hy);
  return {std::move(gx), std::move(gy)};
}

std::map<std::string, double> compute_norms(const std::string& name, const std::vector<double>& f,
                                            double h, int max_order) {
  std::map<std::string, double> out;
  out[name + "_L1"] = norm_l1(f, h);
  out[name + "_L2"] = norm_l2(f, h);
  out[name + "_Linf"] = norm_linf(f);
  double hk = out[name + "_L2"] * out[name + "_L2"];
  std::vector<double> d = f;
  std::string suffix;
  for (int k = 1; k <= max_order; ++k) {
    d = centered_difference(d, h);
    suffix += "x";
    const double l2 = norm_l2(d, h);
    out[name + suffix + "_L2"] = l2;
    out[name + suffix + "_Linf"] = norm_linf(d);
    hk += l2 * l2;
    out[name + "_H" + std::to_string(k)] = std::sqrt(hk);
  }
  return out;
}

// ------------------------------------------------------------- series ----

void NormSeries::append(double t, const std::map<std::string, double>& row) {
  if (!times.empty() && !(t > times.back())) throw ConfigError("norm series times must increase");
  if (!times.empty() && row.size() != norms.size())
    throw ShapeError("norm series row has a different label set");
  for (const auto& [label, value] : row) {
    auto it = norms.find(label);
    if (it == norms.end()) {
      if (!times.empty()) throw ShapeError("norm series row introduces label " + label);
      norms[label].push_back(value);
    } else {
      it->second.push_back(value);
    }
  }
  times.push_back(t);
}

const std::vector<double>& NormSeries::at(const std::string& label) const {
  auto it = norms.find(label);
  if (it == norms.end()) throw ConfigError("norm series has no label " + label);
  return it->second;
}

std::string NormSeries::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "t";
  for (const auto& [label, _] : norms) os << ',' << label;
  os << '\n';
  for (std::size_t i = 0; i < times.size(); ++i) {
    os << times[i];
    for (const auto& [_, values] : norms) os << ',' << values[i];
    os << '\n';
  }
  return os.str();
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw FitError("linear fit needs two or more paired samples");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw FitError("linear fit abscissae are all equal");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return f;
}

DecayFit fit_power_law(const std::vector<double>& times, const std::vector<double>& values,
                       double t_lo, double t_hi, int min_samples) {
  if (times.size() != values.size()) throw ShapeError("times and values differ in length");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t_lo || times[i] > t_hi) continue;
    if (!(values[i] > 0.0))
      throw FitError("nonpositive norm at t = " + std::to_string(times[i]) +
                     " (round-off floor; shrink the window)");
    lx.push_back(std::log1p(times[i]));
    ly.push_back(std::log(values[i]));
  }
  if (static_cast<int>(lx.size()) < min_samples)
    throw FitError("decay fit needs " + std::to_string(min_samples) + " samples in window, got " +
                   std::to_string(lx.size()));
  const auto lf = linear_fit(lx, ly);
  DecayFit d;
  d.t_lo = t_lo;
  d.t_hi = t_hi;
  d.samples = static_cast<int>(lx.size());
  d.fitted_exponent = lf.slope;
  d.fitted_log_constant = lf.intercept;
  d.r_squared = lf.r_squared;
  return d;
}

DecayFit fit_decay(const NormSeries& series, const std::string& label, double t_lo, double t_hi,
                   double paper_exponent, double band, int min_samples) {
  DecayFit d = fit_power_law(series.times, series.at(label), t_lo, t_hi, min_samples);
  d.label = label;
  d.paper_exponent = paper_exponent;
  d.band = band;
  d.pass = std::abs(d.fitted_exponent - paper_exponent) <= band;
  return d;
}

DecayFit fit_decay(const NormSeries& series, const std::string& label, double paper_exponent,
                   double band) {
  if (series.times.empty()) throw FitError("empty norm series");
  const double t_final = series.times.back();
  return fit_decay(series, label, t_final / 10.0, t_final, paper_exponent, band);
}

std::string DecayFit::to_json() const {
  nlohmann::json j;
  j["label"] = label;
  j["window"] = {t_lo, t_hi};
  j["samples"] = samples;
  j["fitted_exponent"] = fitted_exponent;
  j["fitted_log_constant"] = fitted_log_constant;
  j["r_squared"] = r_squared;
  j["paper_exponent"] = paper_exponent;
  j["band"] = band;
  j["pass"] = pass;
  return j.dump(2);
}

// ------------------------------------------------------ decomposition ----

Perturbation1D decompose_perturbations(const State1D& state, const ProfileBundle& profile) {
  if (state.U.size() != profile.grid.n || state.Q.size() != profile.grid.n)
    throw ShapeError("state and profile grids differ");
  Perturbation1D p;
  p.V.resize(state.U.size());
  p.P.resize(state.U.size());
  for (std::size_t i = 0; i < state.U.size(); ++i) {
    p.V[i] = state.U[i] - profile.u_tilde[i];
    p.P[i] = state.Q[i] - profile.q_tilde[i];
  }
  return p;
}

Perturbation2D decompose_perturbations(const State2D& state, const State1D& reference) {
  const auto& g = state.grid;
  if (reference.U.size() != g.nx) throw ShapeError("reference line does not match nx");
  Perturbation2D p;
  p.v.resize(g.size());
  p.p1.resize(g.size());
  p.p2 = state.q2;
  p.divp.resize(g.size());
  const auto sref = centered_difference(reference.Q, g.hx);
  for (std::size_t i = 0; i < g.nx; ++i)
    for (std::size_t j = 0; j < g.ny; ++j) {
      const std::size_t k = g.index(i, j);
      p.v[k] = state.u[k] - reference.U[i];
      p.p1[k] = state.q1[k] - reference.Q[i];
      p.divp[k] = state.s[k] - (i == 0 ? 0.0 : sref[i]);
    }
  return p;
}

// --------------------------------------------------------- properties ----

MonotonicityRecord check_monotonicity_and_signs(const State1D& state, bool initial_monotone) {
  MonotonicityRecord r;
  const double h = state.grid.h;
  r.min_u_x = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < state.U.size(); ++i)
    r.min_u_x = std::min(r.min_u_x, (state.U[i + 1] - state.U[i]) / h);
  r.max_q = -std::numeric_limits<double>::infinity();
  for (double q : state.Q) r.max_q = std::max(r.max_q, q);
  r.u_x_tolerance = -10.0 * h;
  r.hypothesis_met = initial_monotone;
  r.pass = r.min_u_x >= r.u_x_tolerance && r.max_q <= r.q_tolerance;
  if (!initial_monotone) r.status = "hypothesis-unmet";
  else r.status = r.pass ? "pass" : "fail";
  return r;
}

L1GrowthRecord check_l1_growth(const NormSeries& series, double delta, double tail_tolerance) {
  L1GrowthRecord r;
  r.tail_tolerance = tail_tolerance;
  const auto& l1 = series.at("V_L1");
  if (l1.empty()) return r;
  const double v0 = l1.front();
  r.finite = true;
  r.constant = -std::numeric_limits<double>::infinity();
  double scale = 0.0;
  for (std::size_t i = 0; i < l1.size(); ++i) {
    const double t = series.times[i];
    const double ratio = delta > 0.0 ? (l1[i] - v0) / (delta * std::log(2.0 + t))
                                     : l1[i] - v0;
    r.ratio.push_back(ratio);
    r.finite = r.finite && std::isfinite(ratio);
    r.constant = std::max(r.constant, ratio);
    scale = std::max(scale, std::abs(ratio));
  }
  const double t_mid = 0.5 * series.times.back();
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < l1.size(); ++i)
    if (series.times[i] >= t_mid && series.times[i] > 0.0) {
      lx.push_back(std::log(series.times[i]));
      ly.push_back(r.ratio[i]);
    }
  if (lx.size() >= 2) {
    r.tail_slope = linear_fit(lx, ly).slope;
    const double rise = r.tail_slope * (lx.back() - lx.front());
    r.tail_nonincreasing = rise <= tail_tolerance * std::max(scale, 1e-300);
  } else {
    r.tail_nonincreasing = true;
  }
  r.pass = r.finite && r.tail_nonincreasing;
  return r;
}

std::vector<TrendRecord> check_2d_decay(const NormSeries& series,
                                        const std::vector<std::string>& labels) {
  std::vector<TrendRecord> out;
  const std::size_t n = series.times.size();
  for (const auto& label : labels) {
    const auto& v = series.at(label);
    TrendRecord r;
    r.label = label;
    if (n == 0) {
      out.push_back(r);
      continue;
    }
    r.first = v.front();
    r.terminal = v.back();
    const double t_q = series.times.front() + 0.75 * (series.times.back() - series.times.front());
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < n; ++i)
      if (series.times[i] >= t_q && v[i] > 0.0 && series.times[i] > 0.0) {
        lx.push_back(std::log(series.times[i]));
        ly.push_back(std::log(v[i]));
      }
    if (lx.size() >= 2) {
      r.tail_slope = linear_fit(lx, ly).slope;
      r.decreasing = r.tail_slope < 0.0;
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace radgas
