#include <doctest.h>

#include <filesystem>
#include <set>

#include <json.hpp>

#include "radgas/errors.hpp"
#include "radgas/io.hpp"
#include "radgas/runner.hpp"
#include "radgas/scenario.hpp"

using namespace radgas;
namespace fs = std::filesystem;

namespace {

const char* kSmall = R"(
[riemann]
u_minus = 0.2
u_plus = 0.6
[grid]
n = 257
length = 100
[initial]
family = tanh
tanh_width = 4
step_center = 20
[time]
t_final = 10
snapshots = 2.5
diag_interval = 0.5
)";

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::path(RADGAS_TEST_TMP) / name;
  fs::remove_all(d);
  return d;
}

RunOptions quiet_into(const fs::path& d) {
  RunOptions o;
  o.out_dir = d.string();
  o.quiet = true;
  return o;
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(read_file(p)); }

}  // namespace

TEST_CASE("io helpers") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  const auto d = fresh_dir("atomic");
  fs::create_directories(d);
  write_atomic(d / "a.txt", "first");
  write_atomic(d / "a.txt", "second");
  CHECK(read_file(d / "a.txt") == "second");
  int entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(d)) ++entries;
  CHECK(entries == 1);
}

TEST_CASE("time plan") {
  auto s = parse_scenario(kSmall);
  const auto p = plan_time(s, 0.07);
  CHECK(p.steps % 20 == 0);
  CHECK(p.diag_every == p.steps / 20);
  CHECK(p.dt <= 0.9 * 0.07);
  CHECK(static_cast<double>(p.steps) * p.dt == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(p.snapshot_steps.front() == 0);
  CHECK(p.snapshot_steps.back() == p.steps);
  CHECK(p.snapshot_steps.size() == 3);
  s.t_final = 0.0;
  s.snapshot_times.clear();
  const auto z = plan_time(s, 0.07);
  CHECK(z.steps == 0);
  CHECK(z.snapshot_steps == std::vector<long>{0});
}

TEST_CASE("empty time range gives the initial snapshot only") {
  auto s = parse_scenario(kSmall);
  s.t_final = 0.0;
  s.snapshot_times.clear();
  const auto tr = simulate_1d(s, Formulation::coupled);
  CHECK(tr.snapshots.size() == 1);
  CHECK(tr.snapshots[0].t == 0.0);
  CHECK(tr.series.times == std::vector<double>{0.0});
}

TEST_CASE("run artifacts, determinism and manifest") {
  const auto s = parse_scenario(kSmall);
  const auto a = fresh_dir("run_a"), b = fresh_dir("run_b");
  REQUIRE(run_scenario(s, quiet_into(a)) == kExitOk);
  REQUIRE(run_scenario(s, quiet_into(b)) == kExitOk);
  const auto manifest = read_json(a / "manifest.json");
  CHECK(manifest["status"] == "ok");
  CHECK(manifest["config_hash"] == config_hash(s));
  std::set<std::string> listed;
  for (const auto& f : manifest["files"]) {
    const std::string name = f["name"];
    listed.insert(name);
    CHECK(f["sha256"] == sha256_hex(read_file(a / name)));
    if (name.ends_with(".csv") || name.ends_with(".json")) CHECK(read_file(a / name) == read_file(b / name));
  }
  for (const char* n : {"snapshot_coupled_0000.csv", "snapshot_coupled_0001.csv", "snapshot_coupled_0002.csv",
                        "snapshot_coupled_0000.json", "norms_coupled.csv", "norms_coupled.json", "fits.json",
                        "properties.json"})
    CHECK(listed.count(n) == 1);
  for (const auto& e : fs::directory_iterator(a))
    if (e.path().filename() != "manifest.json") CHECK(listed.count(e.path().filename().string()) == 1);
  CHECK_FALSE(fs::exists(a / "ABORTED"));
  const auto fits = read_json(a / "fits.json");
  CHECK(fits[0]["label"] == "V_Linf");
  const auto props = read_json(a / "properties.json");
  CHECK(props["coupled"]["monotonicity"]["status"] == "pass");

  // A second run into the same directory overwrites in place.
  REQUIRE(run_scenario(s, quiet_into(a)) == kExitOk);
  CHECK(read_file(a / "norms_coupled.csv") == read_file(b / "norms_coupled.csv"));
}

TEST_CASE("dry run writes nothing") {
  const auto s = parse_scenario(kSmall);
  const auto d = fresh_dir("dry");
  auto o = quiet_into(d);
  o.dry_run = true;
  CHECK(run_scenario(s, o) == kExitOk);
  CHECK(run_profiles(s, o) == kExitOk);
  CHECK(run_converge(s, o) == kExitOk);
  CHECK_FALSE(fs::exists(d));
}

TEST_CASE("aborted run keeps partial output and a marker") {
  const auto s = parse_scenario(kSmall);
  const auto d = fresh_dir("aborted");
  auto o = quiet_into(d);
  o.fault_step = 25;
  CHECK(run_scenario(s, o) == kExitAborted);
  CHECK(fs::exists(d / "ABORTED"));
  CHECK(read_json(d / "manifest.json")["status"] == "aborted");
  const auto props = read_json(d / "properties.json");
  CHECK(props["coupled"]["aborted"] == true);
  CHECK(fs::exists(d / "norms_coupled.csv"));
  const auto tr = simulate_1d(s, Formulation::coupled, Exec::parallel, 25);
  CHECK(tr.aborted);
  CHECK_FALSE(tr.series.times.empty());
  CHECK(tr.series.times.back() < s.t_final);
  // A clean rerun clears the marker.
  CHECK(run_scenario(s, quiet_into(d)) == kExitOk);
  CHECK_FALSE(fs::exists(d / "ABORTED"));
}

TEST_CASE("must-pass failure sets the exit status") {
  auto s = parse_scenario(kSmall);
  s.must_pass = true;
  s.paper_exponent = -5.0;
  s.band = 0.01;
  const auto d = fresh_dir("must_pass");
  CHECK(run_scenario(s, quiet_into(d)) == kExitPropertyFailed);
  CHECK(read_json(d / "manifest.json")["status"] == "property-failed");
}

TEST_CASE("both formulations are compared") {
  auto s = parse_scenario(kSmall);
  s.formulation = FormulationChoice::both;
  const auto d = fresh_dir("both");
  CHECK(run_scenario(s, quiet_into(d)) == kExitOk);
  const auto props = read_json(d / "properties.json");
  CHECK(props.contains("cross_formulation"));
  CHECK(props["cross_formulation"]["max_abs_gap"].get<double>() < 1e-2);
  CHECK(fs::exists(d / "norms_convolution.csv"));
  CHECK(read_json(d / "snapshot_convolution_0000.json").contains("lift"));
}

TEST_CASE("profile output") {
  auto s = parse_scenario(kSmall);
  s.family = InitialFamily::profile;
  s.snapshot_times = {5.0};
  s.profile_times = {5, 10, 20, 40, 80, 160};
  const auto d = fresh_dir("profiles");
  run_profiles(s, quiet_into(d));
  CHECK(fs::exists(d / "properties.json"));
  CHECK(fs::exists(d / "manifest.json"));
  bool found = false;
  for (const auto& e : fs::directory_iterator(d))
    if (e.path().extension() == ".csv") {
      found = true;
      CHECK(read_file(e.path()).rfind("x,r,w,u_tilde,q_tilde,R1,R2", 0) == 0);
    }
  CHECK(found);
}

TEST_CASE("convergence studies") {
  SUBCASE("evolve mode on tanh data") {
    const auto s = parse_scenario(R"(
[riemann]
u_minus = 0.5
u_plus = 1.5
[grid]
n = 401
length = 60
[initial]
family = tanh
step_center = 20
[time]
t_final = 5
[converge]
t_check = 5
)");
    const auto r = convergence_study(s);
    CHECK(r.mode == "evolve");
    REQUIRE(r.orders.size() == 2);
    REQUIRE(r.orders[0].size() == 1);
    CHECK(r.orders[0][0] >= 1.7);
    CHECK(r.orders[0][0] <= 2.3);
    CHECK_FALSE(r.degenerate);
    CHECK_FALSE(r.unresolved);
    CHECK(r.levels[2].steps == 4 * r.levels[0].steps);
  }
  SUBCASE("elliptic mode") {
    const auto s = load_scenario(std::string(RADGAS_SOURCE_DIR) + "/scenarios/elliptic_convergence.ini");
    const auto r = convergence_study(s);
    CHECK(r.mode == "elliptic");
    for (double o : r.orders[0]) CHECK(std::abs(o - 2.0) <= 0.3);
  }
  SUBCASE("round-off errors are reported as degenerate") {
    ConvergenceReport r;
    r.fields = {"U"};
    r.errors = {{1e-15, 3e-16, 2e-16}};
    assess_orders(r);
    CHECK(r.degenerate);
    CHECK(nlohmann::json::parse(r.to_json())["degenerate"] == true);
  }
  SUBCASE("an order below one flags the coarse level") {
    ConvergenceReport r;
    r.fields = {"U"};
    r.errors = {{1e-2, 8e-3, 2e-3}};
    assess_orders(r);
    CHECK(r.unresolved);
    CHECK(r.orders[0][1] == doctest::Approx(2.0));
  }
}

TEST_CASE("small half-plane run") {
  const auto s = parse_scenario(R"(
[riemann]
u_minus = 0.1
u_plus = 0.3
[grid]
n = 129
length = 120
ny = 16
ly = 10
[initial]
sine_amplitude = 0.01
[time]
t_final = 20
diag_interval = 1
[checks]
fit_label = v_Linf
fit_t_lo = 5
band = 1
)");
  const auto d = fresh_dir("run_2d");
  const int code = run_scenario(s, quiet_into(d));
  CHECK(code == kExitOk);
  const auto props = read_json(d / "properties.json");
  CHECK(props["curl_pass"] == true);
  CHECK(props["trends"].size() == 5);
  CHECK(fs::exists(d / "snapshot_2d_0000.csv"));
  const auto tr = simulate_2d(s);
  const auto& v = tr.series.at("v_Linf");
  CHECK(v.back() < v[5]);
  CHECK(tr.plan.steps * tr.plan.dt == doctest::Approx(20.0).epsilon(1e-14));
}
