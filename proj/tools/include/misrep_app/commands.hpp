#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "misrep_app/acceptance.hpp"
#include "misrep_app/config.hpp"

namespace misrep::app {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kConfigError = 2, kIoError = 3 };

// Attached to every report: equilibrium payoff extremes are bracketed, never computed.
extern const char* const kEquilibriumNote;

int cmd_check_separation(const Experiment& e, std::ostream& out);
int cmd_bounds(const Experiment& e, std::ostream& out);
int cmd_stackelberg(const Experiment& e, std::ostream& out);
// Writes trajectories.csv and summary.json under out_dir, echoing the summary to `out`.
int cmd_simulate(const Experiment& e, const std::string& out_dir, std::ostream& out);
int cmd_verify(const std::string& suite, const AcceptanceOptions& options, std::ostream& out, std::ostream& err);
int cmd_scenario_list(std::ostream& out);
int cmd_scenario_emit(const std::string& name, const std::map<std::string, double>& params, std::ostream& out);

}  // namespace misrep::app
