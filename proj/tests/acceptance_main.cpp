#include <cstdio>
#include <string>

#include "radgas/acceptance.hpp"
#include "radgas/io.hpp"

int main(int argc, char** argv) {
  radgas::AcceptanceOptions opt;
  opt.on_result = [](const radgas::CriterionResult& r) {
    std::printf("criterion %2d %s  %s: %s\n", r.id, r.pass ? "PASS" : "FAIL", r.title.c_str(), r.summary.c_str());
    std::fflush(stdout);
  };
  const auto report = radgas::run_acceptance(opt);
  if (argc > 1) radgas::write_atomic(argv[1], report.to_json());
  int failed = 0;
  for (const auto& c : report.criteria) failed += c.pass ? 0 : 1;
  std::printf("%d of %zu criteria passed\n", static_cast<int>(report.criteria.size()) - failed,
              report.criteria.size());
  return failed == 0 ? 0 : 1;
}
