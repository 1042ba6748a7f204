#include "radgas/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <random>
#include <set>

#include <json.hpp>
#include <omp.h>

#include "radgas/errors.hpp"
#include "radgas/io.hpp"
#include "radgas/profiles.hpp"

namespace radgas {

using nlohmann::json;

namespace {

constexpr double kStepSafety = 0.9;
constexpr long kMaxSteps = 100'000'000;
constexpr const char* kVersion = "1.0.0";
constexpr const char* kScheme = "MUSCL-minmod + local Lax-Friedrichs, SSP-RK2";

// Uniform deviate in [-1, 1) from the top 53 bits, independent of the
// standard library's distribution implementation.
double symmetric_unit(std::mt19937_64& rng) {
  return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
}

double bump(const Scenario& s, double x) {
  if (s.bump_amplitude == 0.0) return 0.0;
  const double r = (x - s.bump_center) / s.bump_width;
  if (std::abs(r) >= 1.0) return 0.0;
  const double c = std::cos(0.5 * M_PI * r);
  return s.bump_amplitude * c * c;
}

bool nondecreasing(const std::vector<double>& u) {
  for (std::size_t i = 0; i + 1 < u.size(); ++i)
    if (u[i + 1] < u[i]) return false;
  return true;
}

// Coarse-grid samples of a field refined by `factor`.
std::vector<double> restrict_to(const std::vector<double>& fine, std::size_t n, std::size_t factor) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = fine[i * factor];
  return out;
}

json fit_json(const DecayFit& f) { return json::parse(f.to_json()); }

json monotonicity_json(const MonotonicityRecord& r) {
  return {{"min_u_x", r.min_u_x},   {"max_q", r.max_q},   {"u_x_tolerance", r.u_x_tolerance},
          {"q_tolerance", r.q_tolerance}, {"hypothesis_met", r.hypothesis_met},
          {"pass", r.pass},         {"status", r.status}};
}

json l1_json(const L1GrowthRecord& r) {
  return {{"constant", r.constant},   {"tail_slope", r.tail_slope},
          {"tail_tolerance", r.tail_tolerance}, {"finite", r.finite},
          {"tail_nonincreasing", r.tail_nonincreasing}, {"pass", r.pass}};
}

json trend_json(const TrendRecord& r) {
  return {{"label", r.label}, {"first", r.first}, {"terminal", r.terminal},
          {"tail_slope", r.tail_slope}, {"decreasing", r.decreasing}};
}

json grid_json(const HalfLineGrid& g) { return {{"n", g.n}, {"h", g.h}, {"length", g.length()}}; }

json grid_json(const HalfPlaneGrid& g) {
  return {{"nx", g.nx}, {"ny", g.ny}, {"hx", g.hx}, {"hy", g.hy}, {"lx", g.lx()}, {"ly", g.ly()}};
}

std::string snapshot_csv(const State1D& st, const ProfileBundle& prof) {
  const auto p = decompose_perturbations(st, prof);
  std::string out = "x,U,Q,V,P\n";
  for (std::size_t i = 0; i < st.U.size(); ++i) {
    out += format_double(st.grid.x(i)) + "," + format_double(st.U[i]) + "," + format_double(st.Q[i]) + "," +
           format_double(p.V[i]) + "," + format_double(p.P[i]) + "\n";
  }
  return out;
}

std::string snapshot_csv(const State2D& st, const State1D& ref) {
  const auto& g = st.grid;
  std::string out = "x,y,u,q1,q2,s,v\n";
  for (std::size_t i = 0; i < g.nx; ++i)
    for (std::size_t j = 0; j < g.ny; ++j) {
      const std::size_t k = g.index(i, j);
      out += format_double(g.x(i)) + "," + format_double(g.y(j)) + "," + format_double(st.u[k]) + "," +
             format_double(st.q1[k]) + "," + format_double(st.q2[k]) + "," + format_double(st.s[k]) + "," +
             format_double(st.u[k] - ref.U[i]) + "\n";
    }
  return out;
}

std::string tag(std::size_t k) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04zu", k);
  return buf;
}

double fit_lo(const Scenario& s) { return s.fit_t_lo >= 0 ? s.fit_t_lo : s.t_final / 10.0; }
double fit_hi(const Scenario& s) { return s.fit_t_hi >= 0 ? s.fit_t_hi : s.t_final; }

json decay_fit_or_error(const NormSeries& series, const Scenario& s, const std::string& label, bool& pass) {
  try {
    const auto f = fit_decay(series, label, fit_lo(s), fit_hi(s), s.paper_exponent, s.band);
    pass = f.pass;
    return fit_json(f);
  } catch (const Error& e) {
    pass = false;
    return {{"label", label}, {"error", e.what()}, {"pass", false}};
  }
}

std::string manifest_fields(const Scenario& s, const std::string& command, const std::string& status) {
  json m = {{"command", command},
            {"scenario", s.name},
            {"config_hash", config_hash(s)},
            {"status", status},
            {"versions", {{"radgas", kVersion}, {"compiler", __VERSION__}, {"cxx_standard", __cplusplus}}},
            {"threads", omp_get_max_threads()}};
  return m.dump();
}

std::filesystem::path output_dir(const Scenario& s, const RunOptions& opt) {
  return opt.out_dir.empty() ? std::filesystem::path(s.output_dir) : std::filesystem::path(opt.out_dir);
}

void say(const RunOptions& opt, const std::string& line) {
  if (!opt.quiet) std::cout << line << "\n";
}

}  // namespace

TimePlan plan_time(const Scenario& s, double max_dt) {
  TimePlan p;
  if (s.t_final <= 0) {
    p.snapshot_steps = {0};
    return p;
  }
  const double cadence = s.diag_interval > 0 ? s.diag_interval : s.t_final / 100.0;
  const long intervals = std::max(1L, std::lround(s.t_final / cadence));
  const double per = std::ceil(s.t_final / (static_cast<double>(intervals) * kStepSafety * max_dt));
  if (!(per >= 1) || per * static_cast<double>(intervals) > static_cast<double>(kMaxSteps))
    throw ConfigError("time plan needs more than " + std::to_string(kMaxSteps) + " steps");
  p.diag_every = static_cast<long>(per);
  p.steps = p.diag_every * intervals;
  p.dt = s.t_final / static_cast<double>(p.steps);
  std::set<long> snaps = {0, p.steps};
  for (double t : s.snapshot_times)
    snaps.insert(std::clamp(static_cast<long>(std::ceil(t / p.dt - 1e-9)), 0L, p.steps));
  p.snapshot_steps.assign(snaps.begin(), snaps.end());
  return p;
}

std::vector<double> initial_data_1d(const Scenario& s, const HalfLineGrid& grid) {
  const FluxPair flux = s.flux();
  const RiemannData data = s.riemann();
  std::vector<double> u(grid.n);
  switch (s.family) {
    case InitialFamily::profile:
      u = modified_profile(flux, data, grid, s.t0).u_tilde;
      break;
    case InitialFamily::tanh:
      for (std::size_t i = 0; i < grid.n; ++i)
        u[i] = data.u_minus + (data.u_plus - data.u_minus) * std::tanh(grid.x(i) / s.tanh_width);
      break;
    case InitialFamily::step:
      // Cosine ramp over [c - 2h, c + 2h].
      for (std::size_t i = 0; i < grid.n; ++i) {
        const double r = std::clamp((grid.x(i) - s.step_center + 2.0 * grid.h) / (4.0 * grid.h), 0.0, 1.0);
        u[i] = data.u_minus + (data.u_plus - data.u_minus) * 0.5 * (1.0 - std::cos(M_PI * r));
      }
      break;
  }
  for (std::size_t i = 0; i < grid.n; ++i) u[i] += bump(s, grid.x(i));
  if (s.noise_amplitude != 0.0) {
    std::mt19937_64 rng(s.seed);
    for (std::size_t i = 1; i < grid.n; ++i) u[i] += s.noise_amplitude * symmetric_unit(rng);
  }
  u[0] = data.u_minus;
  return u;
}

std::vector<double> initial_data_2d(const Scenario& s, const HalfPlaneGrid& grid) {
  Scenario planar = s;
  planar.noise_amplitude = 0.0;
  const auto line = initial_data_1d(planar, grid.line());
  std::vector<double> u(grid.size());
  std::mt19937_64 rng(s.seed);
  for (std::size_t i = 0; i < grid.nx; ++i) {
    const double x = grid.x(i);
    for (std::size_t j = 0; j < grid.ny; ++j) {
      double v = line[i] + s.sine_amplitude * std::sin(2.0 * M_PI * grid.y(j) / grid.ly()) * x * std::exp(-x);
      if (s.noise_amplitude != 0.0 && i > 0) v += s.noise_amplitude * symmetric_unit(rng);
      u[grid.index(i, j)] = v;
    }
  }
  return u;
}

Trajectory1D simulate_1d(const Scenario& s, Formulation form, Exec exec, long fault_step) {
  const FluxPair flux = s.flux();
  const RiemannData data = s.riemann();
  const auto grid = HalfLineGrid::make(s.n, s.length);
  Evolver1D ev(flux, data, grid, form, s.cfl, exec);

  Trajectory1D tr;
  tr.formulation = form;
  auto U0 = initial_data_1d(s, grid);
  tr.initial_monotone = nondecreasing(U0);
  State1D st = ev.make_state(std::move(U0));
  tr.plan = plan_time(s, ev.max_dt(st));
  tr.min_u_x = std::numeric_limits<double>::infinity();
  tr.max_q = -std::numeric_limits<double>::infinity();

  std::size_t next_snap = 0;
  auto sample = [&](long k) {
    if (k % tr.plan.diag_every == 0 || k == tr.plan.steps) {
      const auto prof = modified_profile(flux, data, grid, st.t + s.t0, exec);
      const auto p = decompose_perturbations(st, prof);
      auto row = compute_norms("V", p.V, grid.h, 2);
      row["P_L2"] = norm_l2(p.P, grid.h);
      row["P_Linf"] = norm_linf(p.P);
      const auto mono = check_monotonicity_and_signs(st, tr.initial_monotone);
      row["min_Ux"] = mono.min_u_x;
      row["max_Q"] = mono.max_q;
      row["boundary_error"] = std::abs(st.U[0] - data.u_minus);
      tr.min_u_x = std::min(tr.min_u_x, mono.min_u_x);
      tr.max_q = std::max(tr.max_q, mono.max_q);
      tr.series.append(st.t, row);
    }
    if (next_snap < tr.plan.snapshot_steps.size() && tr.plan.snapshot_steps[next_snap] == k) {
      tr.snapshots.push_back(st);
      ++next_snap;
    }
  };

  sample(0);
  for (long k = 1; k <= tr.plan.steps; ++k) {
    try {
      if (k == fault_step) {
        State1D poisoned = st;
        poisoned.U[grid.n / 2] = std::numeric_limits<double>::quiet_NaN();
        ev.step(poisoned, tr.plan.dt);
        st = std::move(poisoned);
      } else {
        ev.step(st, tr.plan.dt);
      }
    } catch (const Error& e) {
      tr.aborted = true;
      tr.abort_reason = e.what();
      break;
    }
    st.t = static_cast<double>(k) * tr.plan.dt;
    sample(k);
  }
  tr.final_state = st;
  return tr;
}

Trajectory2D simulate_2d(const Scenario& s, Exec exec) {
  const FluxPair flux = s.flux();
  const RiemannData data = s.riemann();
  const auto grid = HalfPlaneGrid::make(s.n, s.ny, s.length, s.ly);
  const auto line = grid.line();
  Evolver2D ev(flux, data, grid, s.cfl, exec);
  Evolver1D ref(flux, data, line, Formulation::coupled, s.cfl, exec);

  Scenario planar = s;
  planar.noise_amplitude = 0.0;
  State1D st1 = ref.make_state(initial_data_1d(planar, line));
  State2D st2 = ev.make_state(initial_data_2d(s, grid));

  Trajectory2D tr;
  tr.plan = plan_time(s, std::min(ev.max_dt(st2), ref.max_dt(st1)));

  std::size_t next_snap = 0;
  auto sample = [&](long k) {
    if (k % tr.plan.diag_every == 0 || k == tr.plan.steps) {
      const auto p = decompose_perturbations(st2, st1);
      const auto gv = gradient_2d(p.v, grid);
      const auto gs = gradient_2d(p.divp, grid);
      const auto gp1 = gradient_2d(p.p1, grid);
      const auto gp2 = gradient_2d(p.p2, grid);
      double grad_v = 0.0, grad_divp = 0.0, pmax = 0.0, grad_p = 0.0, spread = 0.0;
      std::vector<double> grad_v_abs(grid.size());
      for (std::size_t q = 0; q < grid.size(); ++q) {
        grad_v_abs[q] = std::hypot(gv.first[q], gv.second[q]);
        grad_v = std::max(grad_v, grad_v_abs[q]);
        grad_p = std::max(grad_p, std::sqrt(gp1.first[q] * gp1.first[q] + gp1.second[q] * gp1.second[q] +
                                            gp2.first[q] * gp2.first[q] + gp2.second[q] * gp2.second[q]));
        grad_divp = std::max(grad_divp, std::hypot(gs.first[q], gs.second[q]));
        pmax = std::max(pmax, std::hypot(p.p1[q], p.p2[q]));
      }
      for (std::size_t i = 0; i < grid.nx; ++i) {
        const auto row = st2.u.begin() + static_cast<std::ptrdiff_t>(grid.index(i, 0));
        const auto mm = std::minmax_element(row, row + static_cast<std::ptrdiff_t>(grid.ny));
        spread = std::max(spread, *mm.second - *mm.first);
      }
      const DivpFields fields{st2.s, st2.q1, st2.q2};
      const double curl = curl_residual(fields, grid);
      const double curl4 = curl_residual_fourth_order(fields, grid);
      tr.max_curl = std::max(tr.max_curl, curl);
      tr.max_curl_fourth_order = std::max(tr.max_curl_fourth_order, curl4);
      tr.max_y_spread = std::max(tr.max_y_spread, spread);
      const double v_l2 = norm_l2_2d(p.v, grid);
      const double grad_v_l2 = norm_l2_2d(grad_v_abs, grid);
      tr.series.append(st2.t, {{"v_Linf", norm_linf(p.v)},
                               {"v_L2", v_l2},
                               {"v_H1", std::sqrt(v_l2 * v_l2 + grad_v_l2 * grad_v_l2)},
                               {"grad_v_Linf", grad_v},
                               {"p_Linf", pmax},
                               {"grad_p_Linf", grad_p},
                               {"divp_Linf", norm_linf(p.divp)},
                               {"divp_L2", norm_l2_2d(p.divp, grid)},
                               {"grad_divp_Linf", grad_divp},
                               {"curl", curl},
                               {"curl_fourth_order", curl4},
                               {"y_spread", spread}});
    }
    if (next_snap < tr.plan.snapshot_steps.size() && tr.plan.snapshot_steps[next_snap] == k) {
      tr.snapshots.push_back(st2);
      tr.reference_snapshots.push_back(st1);
      ++next_snap;
    }
  };

  sample(0);
  for (long k = 1; k <= tr.plan.steps; ++k) {
    try {
      ref.step(st1, tr.plan.dt);
      ev.step(st2, tr.plan.dt);
    } catch (const Error& e) {
      tr.aborted = true;
      tr.abort_reason = e.what();
      break;
    }
    st1.t = st2.t = static_cast<double>(k) * tr.plan.dt;
    sample(k);
  }
  return tr;
}

namespace {

json sidecar(const Scenario& s, const std::string& formulation, const TimePlan& plan, double t,
             const json& grid, const std::vector<std::string>& columns) {
  json j = {{"config_hash", config_hash(s)},
            {"scheme", kScheme},
            {"formulation", formulation},
            {"cfl", s.cfl},
            {"dt", plan.dt},
            {"steps", plan.steps},
            {"grid", grid},
            {"t", t},
            {"columns", columns}};
  if (formulation == "convolution") j["lift"] = kConvolutionLift;
  return j;
}

int run_1d(const Scenario& s, ArtifactWriter& w, const RunOptions& opt, std::string& status) {
  std::vector<Formulation> forms;
  if (s.formulation != FormulationChoice::convolution) forms.push_back(Formulation::coupled);
  if (s.formulation != FormulationChoice::coupled) forms.push_back(Formulation::convolution);

  const FluxPair flux = s.flux();
  const RiemannData data = s.riemann();
  json fits = json::array();
  json props = json::object();
  bool must_pass_ok = true;
  bool aborted = false;
  std::vector<Trajectory1D> runs;

  for (Formulation form : forms) {
    const std::string fname = to_string(form);
    say(opt, "integrating " + fname + " formulation");
    auto tr = simulate_1d(s, form, Exec::parallel, opt.fault_step);
    const auto& g = tr.final_state.grid;
    for (std::size_t k = 0; k < tr.snapshots.size(); ++k) {
      const auto& snap = tr.snapshots[k];
      const auto prof = modified_profile(flux, data, g, snap.t + s.t0);
      w.write_csv("snapshot_" + fname + "_" + tag(k), snapshot_csv(snap, prof),
                  sidecar(s, fname, tr.plan, snap.t, grid_json(g), {"x", "U", "Q", "V", "P"}).dump(2) + "\n");
    }
    json cols = json::array({"t"});
    for (const auto& [label, _] : tr.series.norms) cols.push_back(label);
    json head = sidecar(s, fname, tr.plan, tr.final_state.t, grid_json(g), {});
    head["columns"] = cols;
    head["diag_every"] = tr.plan.diag_every;
    w.write_csv("norms_" + fname, tr.series.to_csv(), head.dump(2) + "\n");

    bool fit_pass = false;
    json fit = decay_fit_or_error(tr.series, s, s.fit_label, fit_pass);
    fit["formulation"] = fname;
    fits.push_back(fit);

    MonotonicityRecord mono = check_monotonicity_and_signs(tr.final_state, tr.initial_monotone);
    mono.min_u_x = tr.min_u_x;
    mono.max_q = tr.max_q;
    mono.pass = mono.min_u_x >= mono.u_x_tolerance && mono.max_q <= mono.q_tolerance;
    mono.status = !tr.initial_monotone ? "hypothesis-unmet" : (mono.pass ? "pass" : "fail");
    json p = {{"monotonicity", monotonicity_json(mono)}, {"aborted", tr.aborted}};
    if (!tr.series.times.empty()) p["l1_growth"] = l1_json(check_l1_growth(tr.series, data.delta));
    if (tr.aborted) p["abort_reason"] = tr.abort_reason;
    props[fname] = p;

    if (s.must_pass) {
      must_pass_ok = must_pass_ok && fit_pass;
      if (tr.initial_monotone) must_pass_ok = must_pass_ok && mono.pass;
    }
    aborted = aborted || tr.aborted;
    runs.push_back(std::move(tr));
  }

  if (runs.size() == 2 && !aborted) {
    double gap = 0.0;
    for (std::size_t i = 0; i < runs[0].final_state.U.size(); ++i)
      gap = std::max(gap, std::abs(runs[0].final_state.U[i] - runs[1].final_state.U[i]));
    props["cross_formulation"] = {{"t", runs[0].final_state.t}, {"max_abs_gap", gap}};
  }
  props["must_pass"] = s.must_pass;
  w.write("fits.json", fits.dump(2) + "\n");
  w.write("properties.json", props.dump(2) + "\n");

  if (aborted) {
    status = "aborted";
    return kExitAborted;
  }
  status = must_pass_ok ? "ok" : "property-failed";
  return must_pass_ok ? kExitOk : kExitPropertyFailed;
}

int run_2d(const Scenario& s, ArtifactWriter& w, const RunOptions& opt, std::string& status) {
  say(opt, "integrating half-plane problem with planar reference");
  const auto tr = simulate_2d(s);
  const auto grid = HalfPlaneGrid::make(s.n, s.ny, s.length, s.ly);
  for (std::size_t k = 0; k < tr.snapshots.size(); ++k) {
    const auto& snap = tr.snapshots[k];
    w.write_csv("snapshot_2d_" + tag(k), snapshot_csv(snap, tr.reference_snapshots[k]),
                sidecar(s, "coupled", tr.plan, snap.t, grid_json(grid), {"x", "y", "u", "q1", "q2", "s", "v"})
                        .dump(2) + "\n");
  }
  json cols = json::array({"t"});
  for (const auto& [label, _] : tr.series.norms) cols.push_back(label);
  json head = sidecar(s, "coupled", tr.plan, tr.series.times.empty() ? 0.0 : tr.series.times.back(),
                      grid_json(grid), {});
  head["columns"] = cols;
  head["diag_every"] = tr.plan.diag_every;
  w.write_csv("norms_2d", tr.series.to_csv(), head.dump(2) + "\n");

  bool fit_pass = false;
  json fits = json::array({decay_fit_or_error(tr.series, s, s.fit_label, fit_pass)});
  json trends = json::array();
  bool trends_ok = true;
  if (tr.series.times.size() >= 4) {
    for (const auto& r : check_2d_decay(tr.series, {"v_Linf", "grad_v_Linf", "p_Linf", "grad_p_Linf", "grad_divp_Linf"})) {
      trends.push_back(trend_json(r));
      trends_ok = trends_ok && r.decreasing;
    }
  }
  const bool curl_ok = tr.max_curl <= 1e-6;
  json props = {{"trends", trends},
                {"max_curl", tr.max_curl},
                {"max_curl_fourth_order", tr.max_curl_fourth_order},
                {"curl_pass", curl_ok},
                {"max_y_spread", tr.max_y_spread},
                {"aborted", tr.aborted},
                {"must_pass", s.must_pass}};
  if (s.sine_amplitude == 0.0 && s.noise_amplitude == 0.0 && s.bump_amplitude == 0.0)
    props["planar_symmetry_pass"] = tr.max_y_spread <= 1e-10;
  if (tr.aborted) props["abort_reason"] = tr.abort_reason;
  w.write("fits.json", fits.dump(2) + "\n");
  w.write("properties.json", props.dump(2) + "\n");

  if (tr.aborted) {
    status = "aborted";
    return kExitAborted;
  }
  const bool ok = !s.must_pass || (fit_pass && curl_ok && trends_ok);
  status = ok ? "ok" : "property-failed";
  return ok ? kExitOk : kExitPropertyFailed;
}

}  // namespace

int run_scenario(const Scenario& s, const RunOptions& opt) {
  if (opt.dry_run) {
    say(opt, "scenario '" + s.name + "' is valid (config hash " + config_hash(s) + ")");
    return kExitOk;
  }
  const auto start = std::chrono::steady_clock::now();
  ArtifactWriter w(output_dir(s, opt));
  w.remove_stale("ABORTED");
  std::string status;
  const int code = s.is_2d() ? run_2d(s, w, opt, status) : run_1d(s, w, opt, status);
  if (code == kExitAborted) w.write("ABORTED", "run aborted; see properties.json for the reason\n");
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  w.write_manifest(manifest_fields(s, "run", status), wall);
  say(opt, "run " + status + "; artifacts in " + w.dir().string());
  return code;
}

int run_profiles(const Scenario& s, const RunOptions& opt) {
  if (opt.dry_run) {
    say(opt, "scenario '" + s.name + "' is valid (config hash " + config_hash(s) + ")");
    return kExitOk;
  }
  const auto start = std::chrono::steady_clock::now();
  const FluxPair flux = s.flux();
  const RiemannData data = s.riemann();
  ArtifactWriter w(output_dir(s, opt));

  std::vector<double> times = s.profile_times;
  if (times.empty())
    for (int i = 0; i < 16; ++i) times.push_back(5.0 * std::pow(100.0, i / 15.0));

  const auto grid = HalfLineGrid::make(s.n, s.length);
  std::size_t k = 0;
  for (double t : s.snapshot_times) {
    if (t <= 0) continue;
    const auto b = modified_profile(flux, data, grid, t);
    std::string csv = "x,r,w,u_tilde,q_tilde,R1,R2,u_hat,q_hat\n";
    for (std::size_t i = 0; i < grid.n; ++i) {
      csv += format_double(grid.x(i)) + "," + format_double(b.r[i]) + "," + format_double(b.w[i]) + "," +
             format_double(b.u_tilde[i]) + "," + format_double(b.q_tilde[i]) + "," + format_double(b.R1[i]) + "," +
             format_double(b.R2[i]) + "," + format_double(b.u_hat[i]) + "," + format_double(b.q_hat[i]) + "\n";
    }
    json head = {{"config_hash", config_hash(s)},
                 {"t", t},
                 {"grid", grid_json(grid)},
                 {"boundary_gap", b.boundary_gap},
                 {"regime", to_string(data.regime)},
                 {"columns", {"x", "r", "w", "u_tilde", "q_tilde", "R1", "R2", "u_hat", "q_hat"}}};
    w.write_csv("profile_" + tag(k++), csv, head.dump(2) + "\n");
  }

  PropertySuiteOptions po;
  po.h = s.profile_h;
  po.band = s.band;
  po.fit_from = times.front();
  const auto report = profile_property_suite(flux, data, times, s.p_values, po);
  w.write("properties.json", report.to_json() + "\n");
  const bool ok = !s.must_pass || report.pass;
  const std::string status = ok ? "ok" : "property-failed";
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  w.write_manifest(manifest_fields(s, "profiles", status), wall);
  say(opt, std::string("profile properties ") + (report.pass ? "pass" : "fail") + "; artifacts in " +
               w.dir().string());
  return ok ? kExitOk : kExitPropertyFailed;
}

std::string ConvergenceReport::to_json() const {
  json lv = json::array();
  for (const auto& l : levels) lv.push_back({{"n", l.n}, {"h", l.h}, {"dt", l.dt}, {"steps", l.steps}});
  json f = json::object();
  for (std::size_t i = 0; i < fields.size(); ++i) f[fields[i]] = {{"errors", errors[i]}, {"orders", orders[i]}};
  json j = {{"mode", mode}, {"levels", lv}, {"fields", f}, {"degenerate", degenerate}, {"unresolved", unresolved}};
  return j.dump(2);
}

void assess_orders(ConvergenceReport& r) {
  double biggest = 0.0;
  for (const auto& e : r.errors)
    for (double v : e) biggest = std::max(biggest, v);
  r.degenerate = biggest < kDegenerateError;
  r.orders.assign(r.errors.size(), {});
  if (r.degenerate) return;
  for (std::size_t f = 0; f < r.errors.size(); ++f)
    for (std::size_t k = 0; k + 1 < r.errors[f].size(); ++k) {
      const double o = std::log2(r.errors[f][k] / r.errors[f][k + 1]);
      r.orders[f].push_back(o);
      if (!(o >= 1.0)) r.unresolved = true;
    }
}

ConvergenceReport convergence_study(const Scenario& s, Exec exec) {
  ConvergenceReport r;
  const FluxPair flux = s.flux();
  const RiemannData data = s.riemann();

  if (s.converge_mode == ConvergeMode::elliptic) {
    // U = u_- + d (1 - e^{-2x}) has Q = (2d/3)(e^{-2x} - 2 e^{-x}).
    r.mode = "elliptic";
    r.fields = {"Q"};
    r.errors.assign(1, {});
    const double d = data.u_plus - data.u_minus;
    for (int k = 0; k < s.levels; ++k) {
      const std::size_t n = (s.n - 1) * (std::size_t{1} << k) + 1;
      const auto g = HalfLineGrid::make(n, s.length);
      std::vector<double> U(n);
      for (std::size_t i = 0; i < n; ++i) U[i] = data.u_minus + d * (1.0 - std::exp(-2.0 * g.x(i)));
      const auto Q = solve_Q_1d(U, g);
      double err = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double x = g.x(i);
        err = std::max(err, std::abs(Q[i] - 2.0 * d / 3.0 * (std::exp(-2.0 * x) - 2.0 * std::exp(-x))));
      }
      r.levels.push_back({n, g.h, 0.0, 0});
      r.errors[0].push_back(err);
    }
    assess_orders(r);
    return r;
  }

  r.mode = "evolve";
  const Formulation form =
      s.formulation == FormulationChoice::convolution ? Formulation::convolution : Formulation::coupled;
  std::vector<State1D> finals;
  long base_steps = 0;
  for (int k = 0; k < s.levels; ++k) {
    const std::size_t factor = std::size_t{1} << k;
    const std::size_t n = (s.n - 1) * factor + 1;
    const auto g = HalfLineGrid::make(n, s.length);
    Scenario level = s;
    level.n = n;
    Evolver1D ev(flux, data, g, form, s.cfl, exec);
    State1D st = ev.make_state(initial_data_1d(level, g));
    if (k == 0) base_steps = static_cast<long>(std::ceil(s.t_check / (kStepSafety * ev.max_dt(st))));
    const long steps = base_steps * static_cast<long>(factor);
    const double dt = s.t_check / static_cast<double>(steps);
    for (long j = 1; j <= steps; ++j) {
      ev.step(st, dt);
      st.t = static_cast<double>(j) * dt;
    }
    r.levels.push_back({n, g.h, dt, steps});
    finals.push_back(std::move(st));
  }
  r.fields = {"U", "Q"};
  r.errors.assign(2, {});
  for (std::size_t k = 0; k + 1 < finals.size(); ++k) {
    const auto& coarse = finals[k];
    const std::size_t n = coarse.grid.n;
    const auto fu = restrict_to(finals[k + 1].U, n, 2);
    const auto fq = restrict_to(finals[k + 1].Q, n, 2);
    std::vector<double> du(n), dq(n);
    for (std::size_t i = 0; i < n; ++i) {
      du[i] = coarse.U[i] - fu[i];
      dq[i] = coarse.Q[i] - fq[i];
    }
    r.errors[0].push_back(norm_l1(du, coarse.grid.h));
    r.errors[1].push_back(norm_l1(dq, coarse.grid.h));
  }
  assess_orders(r);
  return r;
}

int run_converge(const Scenario& s, const RunOptions& opt) {
  if (opt.dry_run) {
    say(opt, "scenario '" + s.name + "' is valid (config hash " + config_hash(s) + ")");
    return kExitOk;
  }
  const auto start = std::chrono::steady_clock::now();
  ArtifactWriter w(output_dir(s, opt));
  const auto report = convergence_study(s);
  w.write("converge.json", report.to_json() + "\n");
  const std::string status = report.degenerate ? "degenerate" : (report.unresolved ? "unresolved" : "ok");
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  w.write_manifest(manifest_fields(s, "converge", status), wall);
  say(opt, "convergence study " + status + "; artifacts in " + w.dir().string());
  return report.unresolved && s.must_pass ? kExitPropertyFailed : kExitOk;
}

}  // namespace radgas
