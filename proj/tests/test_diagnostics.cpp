#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "radgas/diagnostics.hpp"
#include "radgas/errors.hpp"
#include "radgas/io.hpp"
#include "radgas/runner.hpp"
#include "radgas/scenario.hpp"

using namespace radgas;

namespace {

std::vector<double> exp_samples(const HalfLineGrid& g) {
  std::vector<double> f(g.n);
  for (std::size_t i = 0; i < g.n; ++i) f[i] = std::exp(-g.x(i));
  return f;
}

NormSeries synthetic(const std::vector<double>& times, double (*fn)(double), const std::string& label) {
  NormSeries s;
  for (double t : times) s.append(t, {{label, fn(t)}});
  return s;
}

std::vector<std::vector<double>> read_csv(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("norms of closed-form fields") {
  const auto grid = HalfLineGrid::make(101, 10.0);
  const std::vector<double> zero(grid.n, 0.0);
  for (const auto& [label, v] : compute_norms("f", zero, grid.h, 3)) CHECK(v == 0.0);

  std::vector<double> e1, e2;
  for (std::size_t n : {2001, 4001}) {
    const auto g = HalfLineGrid::make(n, 40.0);
    const auto f = exp_samples(g);
    CHECK(norm_linf(f) == 1.0);
    e1.push_back(std::abs(norm_l1(f, g.h) - 1.0));
    e2.push_back(std::abs(norm_l2(f, g.h) - 1.0 / std::sqrt(2.0)));
  }
  CHECK(e1[0] < 1e-4);
  CHECK(e2[0] < 1e-4);
  CHECK(std::log2(e1[0] / e1[1]) == doctest::Approx(2.0).epsilon(0.05));
  CHECK(std::log2(e2[0] / e2[1]) == doctest::Approx(2.0).epsilon(0.05));
  CHECK(lp_norm(exp_samples(grid), grid.h, std::numeric_limits<double>::infinity()) == 1.0);

  const auto n = compute_norms("V", exp_samples(HalfLineGrid::make(4001, 40.0)), 0.01, 2);
  CHECK(n.at("V_L1") == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(n.at("Vx_L2") == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-3));
  CHECK(n.at("V_H1") == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("2D gradient of a y-independent field is the x derivative") {
  const auto grid = HalfPlaneGrid::make(201, 8, 20.0, 4.0);
  std::vector<double> f(grid.size()), line(grid.nx);
  for (std::size_t i = 0; i < grid.nx; ++i) {
    line[i] = std::sin(grid.x(i));
    for (std::size_t j = 0; j < grid.ny; ++j) f[grid.index(i, j)] = line[i];
  }
  const auto [gx, gy] = gradient_2d(f, grid);
  const auto lx = difference(line, grid.hx, 1);
  for (std::size_t i = 0; i < grid.nx; ++i)
    for (std::size_t j = 0; j < grid.ny; ++j) {
      CHECK(gx[grid.index(i, j)] == lx[i]);
      CHECK(gy[grid.index(i, j)] == 0.0);
    }
  CHECK(norm_l2_2d(f, grid) == doctest::Approx(norm_l2(line, grid.hx) * std::sqrt(grid.ly())));
}

TEST_CASE("decay fits") {
  std::vector<double> times;
  for (int k = 1; k <= 100; ++k) times.push_back(10.0 * k);
  SUBCASE("exact power law") {
    const auto s = synthetic(times, [](double t) { return 3.0 * std::pow(1 + t, -0.5); }, "V_Linf");
    const auto f = fit_decay(s, "V_Linf", 10.0, 1000.0, -0.5, 0.15);
    CHECK(std::abs(f.fitted_exponent + 0.5) < 1e-6);
    CHECK(f.fitted_log_constant == doctest::Approx(std::log(3.0)));
    CHECK(f.pass);
    CHECK(f.samples == 100);
  }
  SUBCASE("log-cubed correction shifts the exponent upward") {
    // Frozen from an independent least-squares evaluation of the same series.
    const auto s = synthetic(times, [](double t) { return std::pow(1 + t, -0.5) * std::pow(std::log(2 + t), 3); },
                             "V_Linf");
    const auto f = fit_decay(s, "V_Linf", 10.0, 1000.0, -0.5, 0.15);
    CHECK(f.fitted_exponent == doctest::Approx(0.08776685839928904).epsilon(1e-9));
  }
  SUBCASE("default window is the last nine tenths") {
    const auto s = synthetic(times, [](double t) { return std::pow(1 + t, -1.0); }, "x");
    const auto f = fit_decay(s, "x", -1.0, 0.1);
    CHECK(f.t_lo == 100.0);
    CHECK(f.t_hi == 1000.0);
    CHECK(f.samples == 91);
    CHECK(f.fitted_exponent == doctest::Approx(-1.0));
  }
  SUBCASE("refusals") {
    auto s = synthetic(times, [](double t) { return std::pow(1 + t, -1.0); }, "x");
    CHECK_THROWS_AS(fit_decay(s, "x", 10.0, 50.0, -1.0, 0.1), FitError);
    s.norms["x"][50] = 0.0;
    CHECK_THROWS_AS(fit_decay(s, "x", 10.0, 1000.0, -1.0, 0.1), FitError);
    CHECK_THROWS(s.at("missing"));
  }
}

TEST_CASE("monotonicity records") {
  const auto grid = HalfLineGrid::make(101, 10.0);
  State1D st;
  st.grid = grid;
  st.U.assign(grid.n, 0.3);
  st.Q.assign(grid.n, 0.0);
  auto r = check_monotonicity_and_signs(st);
  CHECK(r.min_u_x == 0.0);
  CHECK(r.pass);
  CHECK(r.status == "pass");
  for (std::size_t i = 0; i < grid.n; ++i) st.U[i] = std::tanh(grid.x(i) - 5);
  CHECK(check_monotonicity_and_signs(st).pass);
  st.U[50] -= 0.5;
  r = check_monotonicity_and_signs(st, false);
  CHECK_FALSE(r.pass);
  CHECK(r.status == "hypothesis-unmet");
  CHECK(check_monotonicity_and_signs(st, true).status == "fail");
}

TEST_CASE("L1 growth records") {
  std::vector<double> times;
  for (int k = 0; k <= 40; ++k) times.push_back(5.0 * k);
  SUBCASE("series equal to the bound give a constant ratio") {
    NormSeries s;
    for (double t : times) s.append(t, {{"V_L1", 0.7 + 2.5 * 0.2 * std::log(2 + t)}});
    const auto r = check_l1_growth(s, 0.2);
    // The t = 0 sample contributes the shift 0.7 + 0.5 log 2 against itself.
    for (std::size_t i = 1; i < r.ratio.size(); ++i) {
      const double expect = 2.5 * (std::log(2 + times[i]) - std::log(2.0)) / std::log(2 + times[i]);
      CHECK(r.ratio[i] == doctest::Approx(expect));
    }
    CHECK(r.finite);
  }
  SUBCASE("growing ratio fails the tail test") {
    NormSeries s;
    for (double t : times) s.append(t, {{"V_L1", 0.2 * t}});
    const auto r = check_l1_growth(s, 0.2);
    CHECK_FALSE(r.tail_nonincreasing);
    CHECK_FALSE(r.pass);
  }
  SUBCASE("zero-strength wave contracts") {
    // u_- = u_+ = 0.3: the profile is constant and V = U - 0.3.
    const auto flux = FluxPair::burgers();
    RiemannData d{0.3, 0.3, 0.0, Regime::fprime_positive};
    const auto grid = HalfLineGrid::make(801, 80.0);
    const Evolver1D ev(flux, d, grid, Formulation::coupled);
    std::vector<double> U(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) U[i] = 0.3 + 0.05 * std::exp(-(grid.x(i) - 20) * (grid.x(i) - 20) / 8);
    auto st = ev.make_state(U);
    NormSeries s;
    const double dt = 0.05;
    for (int k = 0; k <= 400; ++k) {
      if (k % 20 == 0) {
        std::vector<double> V(grid.n);
        for (std::size_t i = 0; i < grid.n; ++i) V[i] = st.U[i] - 0.3;
        s.append(st.t, {{"V_L1", norm_l1(V, grid.h)}});
      }
      if (k < 400) ev.step(st, dt);
    }
    const auto& l1 = s.at("V_L1");
    for (std::size_t i = 1; i < l1.size(); ++i) CHECK(l1[i] <= l1[i - 1] * (1 + 1e-6));
    const auto r = check_l1_growth(s, 0.0);
    CHECK(r.finite);
    CHECK(r.constant <= 1e-6);
  }
  SUBCASE("run started on the profile") {
    const auto sc = parse_scenario(R"(
[riemann]
u_minus = 0.1
u_plus = 0.3
[grid]
n = 2049
length = 800
[time]
t_final = 1000
diag_interval = 10
)");
    // The ratio is still climbing before t ~ 400; the tail test needs the long run.
    const auto tr = simulate_1d(sc, Formulation::coupled);
    CHECK(tr.series.at("V_L1").front() == doctest::Approx(0.0).scale(1e-12));
    const auto r = check_l1_growth(tr.series, 0.2);
    CHECK(r.finite);
    CHECK(r.tail_nonincreasing);
    CHECK(r.pass);
  }
}

TEST_CASE("perturbation decomposition") {
  const auto flux = FluxPair::burgers();
  const auto d = RiemannData::make(flux, 0.1, 0.3);
  const auto grid = HalfLineGrid::make(401, 40.0);
  const auto prof = modified_profile(flux, d, grid, 3.0);
  const Evolver1D ev(flux, d, grid, Formulation::coupled);
  SUBCASE("profile data give V = 0") {
    const auto st = ev.make_state(prof.u_tilde, 2.0);
    const auto p = decompose_perturbations(st, prof);
    for (double v : p.V) CHECK(v == 0.0);
    CHECK(p.V[0] == 0.0);
  }
  SUBCASE("decompose then recompose") {
    std::vector<double> U = prof.u_tilde;
    for (std::size_t i = 1; i < grid.n; ++i) U[i] += 0.01 * std::sin(grid.x(i));
    const auto st = ev.make_state(U, 2.0);
    const auto p = decompose_perturbations(st, prof);
    for (std::size_t i = 0; i < grid.n; ++i) {
      CHECK(prof.u_tilde[i] + p.V[i] == doctest::Approx(st.U[i]).epsilon(1e-15));
      CHECK(prof.q_tilde[i] + p.P[i] == doctest::Approx(st.Q[i]).epsilon(1e-14).scale(1e-15));
    }
  }
  SUBCASE("planar 2D state has no transverse perturbation") {
    const auto g2 = HalfPlaneGrid::make(401, 8, 40.0, 4.0);
    const auto ref = ev.make_state(prof.u_tilde);
    Evolver2D ev2(flux, d, g2);
    std::vector<double> u(g2.size());
    for (std::size_t i = 0; i < g2.nx; ++i)
      for (std::size_t j = 0; j < g2.ny; ++j) u[g2.index(i, j)] = ref.U[i];
    const auto st2 = ev2.make_state(u);
    const auto p = decompose_perturbations(st2, ref);
    for (std::size_t k = 0; k < g2.size(); ++k) {
      CHECK(p.v[k] == 0.0);
      CHECK(std::abs(p.p1[k]) < 1e-15);
      CHECK(p.p2[k] == 0.0);
      CHECK(std::abs(p.divp[k]) < 1e-14);
      // recompose u = U + v
      CHECK(ref.U[k / g2.ny] + p.v[k] == st2.u[k]);
    }
  }
}

TEST_CASE("2D run without a perturbation stays at round-off") {
  const auto sc = parse_scenario(R"(
[riemann]
u_minus = 0.1
u_plus = 0.3
[grid]
n = 129
length = 120
ny = 8
ly = 8
[initial]
family = tanh
[time]
t_final = 5
diag_interval = 0.5
)");
  const auto tr = simulate_2d(sc);
  CHECK_FALSE(tr.aborted);
  for (const char* label : {"v_Linf", "grad_v_Linf", "p_Linf", "grad_p_Linf", "divp_Linf", "grad_divp_Linf"})
    for (double v : tr.series.at(label)) CHECK(v <= 1e-13);
  CHECK(tr.max_y_spread <= 1e-14);
  CHECK(tr.max_curl <= 1e-12);
  const auto trends = check_2d_decay(tr.series, {"v_Linf"});
  CHECK(trends.size() == 1);
  CHECK(trends[0].terminal <= 1e-13);
}

TEST_CASE("property records replay from stored snapshots") {
  const auto sc = parse_scenario(R"(
[riemann]
u_minus = 0.2
u_plus = 0.6
[grid]
n = 513
length = 150
[initial]
family = tanh
tanh_width = 4
step_center = 20
[time]
t_final = 20
diag_interval = 1
)");
  const std::filesystem::path dir = std::filesystem::path(RADGAS_TEST_TMP) / "replay";
  std::filesystem::remove_all(dir);
  RunOptions opt;
  opt.out_dir = dir.string();
  opt.quiet = true;
  REQUIRE(run_scenario(sc, opt) == kExitOk);
  const auto tr = simulate_1d(sc, Formulation::coupled);

  const auto rows = read_csv(dir / "snapshot_coupled_0001.csv");
  State1D st;
  st.grid = HalfLineGrid::make(sc.n, sc.length);
  st.t = sc.t_final;
  std::vector<double> V;
  for (const auto& r : rows) {
    st.U.push_back(r[1]);
    st.Q.push_back(r[2]);
    V.push_back(r[3]);
  }
  CHECK(st.U == tr.final_state.U);
  CHECK(st.Q == tr.final_state.Q);
  const auto a = check_monotonicity_and_signs(st);
  const auto b = check_monotonicity_and_signs(tr.final_state);
  CHECK(a.min_u_x == b.min_u_x);
  CHECK(a.max_q == b.max_q);
  CHECK(norm_linf(V) == tr.series.at("V_Linf").back());

  const auto norms = read_csv(dir / "norms_coupled.csv");
  CHECK(norms.size() == tr.series.times.size());
  CHECK(norms.back()[0] == tr.series.times.back());
}
