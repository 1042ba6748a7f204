#include "radgas/errors.hpp"

#include <sstream>

namespace radgas {

namespace {
std::string cfl_message(double requested, double required) {
  std::ostringstream os;
  os.precision(17);
  os << "CFL violation: dt=" << requested << " exceeds admissible dt=" << required;
  return os.str();
}

std::string breakdown_message(double t, long step) {
  std::ostringstream os;
  os.precision(17);
  os << "non-finite value detected at step " << step << " (t=" << t << ")";
  return os.str();
}
}  // namespace

CflViolation::CflViolation(double requested_dt, double required_dt)
    : Error(cfl_message(requested_dt, required_dt)),
      requested_(requested_dt),
      required_(required_dt) {}

NumericalBreakdown::NumericalBreakdown(double t, long step)
    : Error(breakdown_message(t, step)), t_(t), step_(step) {}

}  // namespace radgas
