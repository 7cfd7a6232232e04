#pragma once

#include <string>

#include <json.hpp>

#include "twistcurve/config.hpp"

namespace twistcurve {

// Exit codes: 0 success, 1 analysis came back negative (audit failed,
// witness not found to pass, degree below threshold), 2 usage/config/numeric
// error (thrown as exceptions; the binary maps them to 2).
struct RunOutcome {
    nlohmann::json result;
    int exit_code = 0;
};

// Executes one named command against a validated config.  Data files
// (alpha.csv for eval) land in out_dir; the JSON report envelope is
// assembled by the caller.
RunOutcome run(const std::string& command, const RunConfig& cfg,
               const std::string& out_dir);

}  // namespace twistcurve
