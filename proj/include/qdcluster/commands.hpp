#pragma once

#include <ostream>

#include "qdcluster/config.hpp"

// CLI command bodies. Machine-readable output (JSON or CSV) goes to `out`;
// the resolved config echo and human summary go to `err` as config-file
// syntax (summary lines are '#' comments), so the stderr stream of any run
// can be fed back in as a config file to reproduce it.
//
// Exit codes: 0 success, 1 usage/config/IO error, 2 physics-budget failure.

namespace qdc {

int cmd_params(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_evolve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_cluster(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_fidelity_curve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_montecarlo(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// full round-trip decimal formatting (shortest form that parses back equal)
std::string format_double(double v);

}  // namespace qdc
