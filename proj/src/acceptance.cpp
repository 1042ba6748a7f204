#include "radgas/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <json.hpp>

#include "radgas/diagnostics.hpp"
#include "radgas/elliptic.hpp"
#include "radgas/evolve.hpp"
#include "radgas/hopf_cole.hpp"
#include "radgas/profiles.hpp"
#include "radgas/runner.hpp"

namespace radgas {

using nlohmann::json;

namespace {

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double unit01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit01(rng); }

CriterionResult make(int id, const char* title, bool pass, std::string summary, const json& details) {
  return {id, title, pass, std::move(summary), details.dump()};
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> t;
  for (int i = 0; i < count; ++i) t.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
  return t;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

// Burgers solution by direct quadrature of the heat-kernel representation
//   w = int (x - y)/t K dy / int K dy,  K = exp(-(x-y)^2/(4t) - Phi(y)/2),
// Phi(y) = w_- y (y < 0), w_+ y (y > 0). On each half-line K is a shifted
// Gaussian times exp(c), c = -w x/2 + w^2 t/4, so the pieces are integrated
// at unit scale and recombined in log space.
double heat_kernel_burgers(double w_minus, double w_plus, double x, double t) {
  using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double width = 40.0 * std::sqrt(t);
  struct Piece {
    double log_scale;
    double mass;
    double moment;
  };
  auto piece = [&](double w, double lo, double hi) -> Piece {
    const double centre = x - w * t;
    const double a = std::max(lo, centre - width);
    const double b = std::min(hi, centre + width);
    Piece p{-0.5 * w * x + 0.25 * w * w * t, 0.0, 0.0};
    if (a >= b) return p;
    auto g = [&](double y) { return std::exp(-(y - centre) * (y - centre) / (4.0 * t)); };
    p.mass = Quad::integrate(g, a, b, 15, 1e-15);
    p.moment = Quad::integrate([&](double y) { return (x - y) / t * g(y); }, a, b, 15, 1e-15);
    return p;
  };
  const Piece left = piece(w_minus, -std::numeric_limits<double>::infinity(), 0.0);
  const Piece right = piece(w_plus, 0.0, std::numeric_limits<double>::infinity());
  const double top = std::max(left.log_scale, right.log_scale);
  const double sl = std::exp(left.log_scale - top);
  const double sr = std::exp(right.log_scale - top);
  return (sl * left.moment + sr * right.moment) / (sl * left.mass + sr * right.mass);
}

}  // namespace

bool AcceptanceReport::all_pass() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.pass; });
}

std::string AcceptanceReport::to_json() const {
  json arr = json::array();
  for (const auto& c : criteria)
    arr.push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"summary", c.summary},
                   {"details", json::parse(c.details)}});
  json j = {{"criteria", arr}, {"all_pass", all_pass()}};
  return j.dump(2) + "\n";
}

Scenario thm31_default_scenario() {
  Scenario s;
  s.name = "thm31_default";
  s.flux_name = "burgers";
  s.u_minus = 0.1;
  s.u_plus = 0.3;
  s.n = 4096;
  s.length = 2000.0;
  s.family = InitialFamily::profile;
  s.t0 = 1.0;
  // cos^2 bump of half-width 10 at x = 20; amplitude sets |V0|_H1 = 0.05.
  s.bump_center = 20.0;
  s.bump_width = 10.0;
  s.bump_amplitude = 0.01796;
  s.t_final = 1000.0;
  s.diag_interval = 5.0;
  s.fit_label = "V_Linf";
  s.paper_exponent = -0.5;
  s.band = 0.15;
  s.output_dir = "out/thm31_default";
  return s;
}

Scenario decay_2d_scenario(bool perturbed) {
  Scenario s;
  s.name = perturbed ? "decay_2d" : "planar_control_2d";
  s.flux_name = "burgers";
  s.u_minus = 0.1;
  s.u_plus = 0.3;
  s.n = 512;
  s.length = 400.0;
  s.ny = 128;
  s.ly = 20.0;
  s.family = InitialFamily::profile;
  s.t0 = 1.0;
  s.sine_amplitude = perturbed ? 0.01 : 0.0;
  s.t_final = 100.0;
  s.diag_interval = 2.5;
  s.fit_label = "v_Linf";
  s.paper_exponent = -0.5;
  s.band = 0.5;
  s.fit_t_lo = 10.0;
  s.output_dir = perturbed ? "out/decay_2d" : "out/planar_control_2d";
  return s;
}

CriterionResult criterion_elliptic_oracle() {
  // Order study: Q from the tridiagonal solve against the Neumann kernel
  // applied to the exact -U_x, U = 0.1 + 0.2 tanh x.
  const double L = 40.0;
  std::vector<double> gaps, hs;
  for (int k = 3; k <= 6; ++k) {
    const double h = std::ldexp(1.0, -k);
    const auto g = HalfLineGrid::with_spacing(h, L);
    std::vector<double> U(g.n), f(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
      const double c = std::cosh(g.x(i));
      U[i] = 0.1 + 0.2 * std::tanh(g.x(i));
      f[i] = -0.2 / (c * c);
    }
    gaps.push_back(max_abs_diff(k_neumann(f, g), solve_Q_1d(U, g)));
    hs.push_back(h);
  }
  std::vector<double> orders;
  bool orders_ok = true;
  for (std::size_t k = 0; k + 1 < gaps.size(); ++k) {
    orders.push_back(std::log2(gaps[k] / gaps[k + 1]));
    orders_ok = orders_ok && std::abs(orders.back() - 2.0) <= 0.3;
  }

  // Closed forms at h = 2^-8.
  const auto g = HalfLineGrid::with_spacing(std::ldexp(1.0, -8), L);
  std::vector<double> one(g.n, 1.0), ex(g.n), kd1(g.n), kn1(g.n, 1.0), kde(g.n), kne(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double x = g.x(i);
    ex[i] = std::exp(-x);
    kd1[i] = 1.0 - std::exp(-x);
    kde[i] = 0.5 * x * std::exp(-x);
    kne[i] = 0.5 * (x + 1.0) * std::exp(-x);
  }
  const double e1 = max_abs_diff(k_dirichlet(one, g, Exec::parallel, 1.0), kd1);
  const double e2 = max_abs_diff(k_neumann(one, g, Exec::parallel, 1.0), kn1);
  const double e3 = max_abs_diff(k_dirichlet(ex, g), kde);
  const double e4 = max_abs_diff(k_neumann(ex, g), kne);
  const double worst = std::max({e1, e2, e3, e4});
  const bool pass = orders_ok && worst <= 1e-6;
  json d = {{"h", hs}, {"gap", gaps}, {"orders", orders},
            {"closed_form_errors", {{"dirichlet_one", e1}, {"neumann_one", e2}, {"dirichlet_exp", e3}, {"neumann_exp", e4}}}};
  return make(1, "elliptic oracle equivalence", pass,
              fmt("orders %.3f %.3f %.3f (want 2 +- 0.3); closed-form max error %.2e (want <= 1e-6)", orders[0],
                  orders[1], orders[2], worst),
              d);
}

CriterionResult criterion_hopf_cole() {
  std::mt19937_64 rng(20240601);
  const double pairs[][2] = {{0.1, 0.3}, {0.2, 1.0}, {-0.3, 0.3}, {1.0, 3.0}};
  double worst_value = 0.0, worst_residual = 0.0;
  json samples = json::array();
  for (int k = 0; k < 50; ++k) {
    const auto& p = pairs[k % 4];
    const double t = uniform(rng, 0.5, 50.0);
    const double x = uniform(rng, -5.0, p[1] * t + 10.0);
    const HopfCole hc(p[0], p[1]);
    const double closed = hc.value(x, t);
    const double quad = heat_kernel_burgers(p[0], p[1], x, t);
    const double w_t = hc.t_derivative_direct(x, t);
    const double residual = w_t + closed * hc.derivative(x, t, 1, 0) - hc.derivative(x, t, 2, 0);
    worst_value = std::max(worst_value, std::abs(closed - quad));
    worst_residual = std::max(worst_residual, std::abs(residual));
    samples.push_back({{"x", x}, {"t", t}, {"closed", closed}, {"quadrature", quad}, {"residual", residual}});
  }
  const bool pass = worst_value <= 1e-8 && worst_residual <= 1e-6;
  return make(2, "Hopf-Cole correctness", pass,
              fmt("max |closed - quadrature| %.2e (want <= 1e-8); max PDE residual %.2e (want <= 1e-6)",
                  worst_value, worst_residual),
              {{"max_value_error", worst_value}, {"max_residual", worst_residual}, {"samples", samples}});
}

CriterionResult criterion_profile_decay() {
  const auto flux = FluxPair::burgers();
  const auto data = RiemannData::make(flux, 1.0, 3.0);
  const auto times = log_spaced(5.0, 500.0, 16);
  PropertySuiteOptions po;
  po.band = 0.1;
  po.fit_from = 5.0;
  const auto rep = profile_property_suite(flux, data, times, {std::numeric_limits<double>::infinity()}, po);
  const PropertyFit* fit = nullptr;
  for (const auto& f : rep.fits)
    if (f.label == "w_minus_r_Linf") fit = &f;
  const double min_wx = *std::min_element(rep.min_w_x.begin(), rep.min_w_x.end());
  const bool exponent_ok = fit && std::abs(fit->fitted_exponent + 0.5) <= 0.1;
  const bool pass = exponent_ok && min_wx > 0.0;
  json d = {{"flux", "burgers"}, {"u_minus", 1.0}, {"u_plus", 3.0}, {"times", times},
            {"fitted_exponent", fit ? fit->fitted_exponent : 0.0}, {"r_squared", fit ? fit->r_squared : 0.0},
            {"min_w_x", rep.min_w_x}};
  return make(3, "profile decay", pass,
              fmt("|w - r|_inf exponent %.3f (want -0.5 +- 0.1); min w_x %.3e (want > 0)",
                  fit ? fit->fitted_exponent : 0.0, min_wx),
              d);
}

CriterionResult criterion_monotonicity() {
  std::mt19937_64 rng(20240602);
  const auto flux = FluxPair::burgers();
  const auto grid = HalfLineGrid::make(1024, 500.0);
  const double t_final = 50.0;
  double worst_ux = std::numeric_limits<double>::infinity();
  double worst_q = -std::numeric_limits<double>::infinity();
  int failures = 0;
  json runs = json::array();
  for (int r = 0; r < 50; ++r) {
    const double um = uniform(rng, 0.0, 0.5);
    const double up = um + uniform(rng, 0.1, 0.8);
    const int steps_count = 1 + static_cast<int>(rng() % 4);
    std::vector<double> a(steps_count), c(steps_count), w(steps_count);
    double total = 0.0;
    for (int k = 0; k < steps_count; ++k) {
      a[k] = uniform(rng, 0.1, 1.0);
      c[k] = uniform(rng, 2.0, 100.0);
      w[k] = uniform(rng, 0.5, 20.0);
      total += a[k];
    }
    std::vector<double> U0(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
      double ramp = 0.0;
      for (int k = 0; k < steps_count; ++k) {
        const double base = std::tanh(-c[k] / w[k]);
        ramp += a[k] / total * (std::tanh((grid.x(i) - c[k]) / w[k]) - base) / (1.0 - base);
      }
      U0[i] = um + (up - um) * ramp;
    }
    const auto data = RiemannData::make(flux, um, up);
    Evolver1D ev(flux, data, grid, Formulation::coupled);
    State1D st = ev.make_state(U0);
    const long steps = static_cast<long>(std::ceil(t_final / (0.9 * ev.max_dt(st))));
    const double dt = t_final / static_cast<double>(steps);
    double run_ux = std::numeric_limits<double>::infinity();
    double run_q = -std::numeric_limits<double>::infinity();
    auto observe = [&] {
      const auto m = check_monotonicity_and_signs(st);
      run_ux = std::min(run_ux, m.min_u_x);
      run_q = std::max(run_q, m.max_q);
    };
    observe();
    for (long k = 1; k <= steps; ++k) {
      ev.step(st, dt);
      st.t = static_cast<double>(k) * dt;
      observe();
    }
    const bool ok = run_ux >= -10.0 * grid.h && run_q <= 1e-8;
    failures += ok ? 0 : 1;
    worst_ux = std::min(worst_ux, run_ux);
    worst_q = std::max(worst_q, run_q);
    runs.push_back({{"u_minus", um}, {"u_plus", up}, {"min_u_x", run_ux}, {"max_q", run_q}, {"pass", ok}});
  }
  return make(4, "monotonicity", failures == 0,
              fmt("%d/50 runs violate; worst min U_x %.3e (floor %.3e), worst max Q %.3e (ceiling 1e-8)", failures,
                  worst_ux, -10.0 * grid.h, worst_q),
              {{"h", grid.h}, {"runs", runs}});
}

CriterionResult criterion_cross_formulation() {
  const auto flux = FluxPair::burgers();
  const auto data = RiemannData::make(flux, 0.5, 1.5);
  const double t_final = 10.0;
  std::vector<double> gaps;
  json levels = json::array();
  long base_steps = 0;
  for (int k = 0; k < 3; ++k) {
    const auto g = HalfLineGrid::make(600 * (std::size_t{1} << k) + 1, 60.0);
    std::vector<double> U(g.n);
    for (std::size_t i = 0; i < g.n; ++i) U[i] = 0.5 + std::tanh(g.x(i) / 5.0);
    Evolver1D a(flux, data, g, Formulation::coupled), b(flux, data, g, Formulation::convolution);
    auto sa = a.make_state(U), sb = b.make_state(U);
    if (k == 0) base_steps = static_cast<long>(std::ceil(t_final / (0.9 * a.max_dt(sa))));
    const long steps = base_steps << k;
    const double dt = t_final / static_cast<double>(steps);
    for (long j = 1; j <= steps; ++j) {
      a.step(sa, dt);
      b.step(sb, dt);
    }
    gaps.push_back(max_abs_diff(sa.U, sb.U));
    levels.push_back({{"n", g.n}, {"h", g.h}, {"dt", dt}, {"gap", gaps.back()}});
  }
  const double r1 = gaps[0] / gaps[1];
  const double r2 = gaps[1] / gaps[2];
  return make(5, "cross-formulation equivalence", r1 >= 3.0 && r2 >= 3.0,
              fmt("gap ratios %.2f %.2f per halving (want >= 3)", r1, r2),
              {{"u_minus", 0.5}, {"u_plus", 1.5}, {"levels", levels}, {"ratios", {r1, r2}}});
}

std::pair<CriterionResult, CriterionResult> criteria_perturbation_decay() {
  const Scenario s = thm31_default_scenario();
  const auto tr = simulate_1d(s, Formulation::coupled);
  const double h1 = std::sqrt(std::pow(tr.series.at("V_L2").front(), 2) + std::pow(tr.series.at("Vx_L2").front(), 2));

  DecayFit v{}, vx{};
  bool fitted = !tr.aborted;
  if (fitted) {
    v = fit_decay(tr.series, "V_Linf", 100.0, 1000.0, -0.5, 0.15);
    vx = fit_decay(tr.series, "Vx_Linf", 100.0, 1000.0, -0.5, 0.0);
  }
  const bool v_ok = fitted && v.fitted_exponent >= -0.65 && v.fitted_exponent <= -0.30;
  const bool vx_ok = fitted && vx.fitted_exponent <= -0.5;
  json d6 = {{"scenario", s.name}, {"config_hash", config_hash(s)}, {"h1_of_v0", h1}, {"aborted", tr.aborted},
             {"window", {100.0, 1000.0}}, {"samples", v.samples},
             {"V_Linf", {{"fitted_exponent", v.fitted_exponent}, {"r_squared", v.r_squared}, {"band", {-0.65, -0.30}}}},
             {"Vx_Linf", {{"fitted_exponent", vx.fitted_exponent}, {"r_squared", vx.r_squared}, {"ceiling", -0.5}}}};
  auto c6 = make(6, "1D perturbation decay", v_ok && vx_ok,
                 fmt("|V|_inf exponent %.3f (want in [-0.65, -0.30]); |V_x|_inf exponent %.3f (want <= -0.5); "
                     "|V0|_H1 %.4f",
                     v.fitted_exponent, vx.fitted_exponent, h1),
                 d6);

  const auto l1 = check_l1_growth(tr.series, s.riemann().delta);
  json d7 = {{"constant", l1.constant}, {"tail_slope", l1.tail_slope}, {"tail_tolerance", l1.tail_tolerance},
             {"finite", l1.finite}, {"tail_nonincreasing", l1.tail_nonincreasing}};
  auto c7 = make(7, "L1 growth", !tr.aborted && l1.pass,
                 fmt("sup ratio %.4f; final-half slope %.4f vs log t (want bounded, non-increasing)", l1.constant,
                     l1.tail_slope),
                 d7);
  return {c6, c7};
}

CriterionResult criterion_residual_decay() {
  const auto flux = FluxPair::quartic();
  const auto data = RiemannData::make(flux, 1.0, 2.0);
  const auto times = log_spaced(5.0, 500.0, 16);
  std::vector<double> r1, r2;
  for (double t : times) {
    const auto g = HalfLineGrid::with_spacing(0.05, profile_domain_length(flux, data, t));
    const auto b = modified_profile(flux, data, g, t);
    r1.push_back(norm_l1(b.R1, g.h));
    r2.push_back(norm_l2(b.R2, g.h));
  }
  const auto f1 = fit_power_law(times, r1, 5.0, 500.0, 4);
  const auto f2 = fit_power_law(times, r2, 5.0, 500.0, 4);
  const bool pass = std::abs(f1.fitted_exponent + 1.0) <= 0.2 && f2.fitted_exponent <= -1.5;
  return make(8, "residual decay", pass,
              fmt("|R1|_1 exponent %.3f (want -1 +- 0.2); |R2|_2 exponent %.3f (want <= -1.5)", f1.fitted_exponent,
                  f2.fitted_exponent),
              {{"flux", "quartic"}, {"u_minus", 1.0}, {"u_plus", 2.0}, {"times", times}, {"R1_L1", r1}, {"R2_L2", r2},
               {"R1_exponent", f1.fitted_exponent}, {"R2_exponent", f2.fitted_exponent}});
}

CriterionResult criterion_2d_decay() {
  const auto tr = simulate_2d(decay_2d_scenario(true));
  const auto control = simulate_2d(decay_2d_scenario(false));

  auto value_at = [&](const std::string& label, double t) {
    const auto& ts = tr.series.times;
    for (std::size_t i = 0; i < ts.size(); ++i)
      if (std::abs(ts[i] - t) <= 1e-9 * std::max(1.0, t)) return tr.series.at(label)[i];
    return std::numeric_limits<double>::quiet_NaN();
  };
  const double v10 = value_at("v_Linf", 10.0);
  const double v100 = value_at("v_Linf", 100.0);
  const bool ratio_ok = v100 < 0.2 * v10;
  const auto trends = check_2d_decay(tr.series, {"grad_v_Linf", "p_Linf", "grad_divp_Linf"});
  bool trends_ok = true;
  json tj = json::array();
  for (const auto& r : trends) {
    trends_ok = trends_ok && r.decreasing;
    tj.push_back({{"label", r.label}, {"first", r.first}, {"terminal", r.terminal}, {"tail_slope", r.tail_slope},
                  {"decreasing", r.decreasing}});
  }
  const double curl = std::max(tr.max_curl, control.max_curl);
  const bool curl_ok = curl <= 1e-6;
  const bool sym_ok = control.max_y_spread <= 1e-10;
  const bool pass = !tr.aborted && !control.aborted && ratio_ok && trends_ok && curl_ok && sym_ok;
  json d = {{"sup_v_10", v10}, {"sup_v_100", v100}, {"trends", tj}, {"max_curl", curl},
            {"max_curl_fourth_order", tr.max_curl_fourth_order}, {"control_y_spread", control.max_y_spread},
            {"dt", tr.plan.dt}, {"steps", tr.plan.steps}};
  return make(9, "2D decay", pass,
              fmt("sup|v| 10->100: %.3e -> %.3e (want ratio < 0.2); final-quarter trends %s; curl %.2e (want <= "
                  "1e-6); control y-spread %.2e (want <= 1e-10)",
                  v10, v100, trends_ok ? "decreasing" : "NOT decreasing", curl, control.max_y_spread),
              d);
}

AcceptanceReport run_criteria(const AcceptanceOptions& opt) {
  AcceptanceReport rep;
  auto add = [&](CriterionResult r) {
    if (opt.on_result) opt.on_result(r);
    rep.criteria.push_back(std::move(r));
  };
  add(criterion_elliptic_oracle());
  add(criterion_hopf_cole());
  add(criterion_profile_decay());
  add(criterion_monotonicity());
  add(criterion_cross_formulation());
  auto [c6, c7] = criteria_perturbation_decay();
  add(std::move(c6));
  add(std::move(c7));
  add(criterion_residual_decay());
  add(criterion_2d_decay());
  return rep;
}

AcceptanceReport run_acceptance(const AcceptanceOptions& opt) {
  AcceptanceReport first = run_criteria(opt);
  const AcceptanceReport second = run_criteria();
  const std::string a = first.to_json();
  const std::string b = second.to_json();
  CriterionResult c10 = make(10, "determinism", a == b,
                             a == b ? "two full passes produced byte-identical reports"
                                    : "the two passes produced different reports",
                             {{"bytes", a.size()}, {"identical", a == b}});
  if (opt.on_result) opt.on_result(c10);
  first.criteria.push_back(std::move(c10));
  return first;
}

}  // namespace radgas
