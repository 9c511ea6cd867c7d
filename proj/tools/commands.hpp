#pragma once

#include "run_config.hpp"

namespace explab {

// Each command returns the process exit status: 0 when every check it runs
// passes, 1 otherwise. Errors propagate as exceptions.
int cmd_generate(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);
int cmd_drift(const RunConfig& cfg);
int cmd_ladder(const RunConfig& cfg);
int cmd_scan(const RunConfig& cfg);
int cmd_calibrate(const RunConfig& cfg);
int cmd_lcs(const RunConfig& cfg);
int cmd_report(const RunConfig& cfg);

}  // namespace explab
