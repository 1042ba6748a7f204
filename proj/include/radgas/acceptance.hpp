#pragma once

#include <functional>
#include <string>
#include <vector>

#include "radgas/scenario.hpp"

namespace radgas {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string summary;  // one line, no timings
  std::string details;  // JSON object
};

struct AcceptanceReport {
  std::vector<CriterionResult> criteria;

  bool all_pass() const;
  // Deterministic JSON (no wall times, no host data).
  std::string to_json() const;
};

struct AcceptanceOptions {
  // Called as each criterion finishes (progress output).
  std::function<void(const CriterionResult&)> on_result;
};

// The long 1D run behind criteria 6 and 7 (also scenarios/thm31_default.ini).
Scenario thm31_default_scenario();
// The half-plane run behind criterion 9; `perturbed = false` gives the
// planar-symmetry control.
Scenario decay_2d_scenario(bool perturbed);

CriterionResult criterion_elliptic_oracle();       // 1
CriterionResult criterion_hopf_cole();             // 2
CriterionResult criterion_profile_decay();         // 3
CriterionResult criterion_monotonicity();          // 4
CriterionResult criterion_cross_formulation();     // 5
// 6 and 7 share one trajectory.
std::pair<CriterionResult, CriterionResult> criteria_perturbation_decay();
CriterionResult criterion_residual_decay();        // 8
CriterionResult criterion_2d_decay();              // 9

// Criteria 1 to 9 in order.
AcceptanceReport run_criteria(const AcceptanceOptions& opt = {});

// Criteria 1 to 9, then the whole of 1 to 9 again; criterion 10 passes when
// both reports are byte-identical. The returned report is the first pass
// plus criterion 10.
AcceptanceReport run_acceptance(const AcceptanceOptions& opt = {});

}  // namespace radgas
