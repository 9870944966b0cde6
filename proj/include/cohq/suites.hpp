#pragma once

#include <string>
#include <vector>

#include "cohq/config.hpp"
#include "cohq/report.hpp"

namespace cohq {

// the runnable verification suites, in canonical execution order
const std::vector<std::string>& suite_names();

// whether the suite can run for the configured model; on false, `why`
// receives the reason recorded in skip records
bool suite_applicable(const RunConfig& cfg, const std::string& suite, std::string* why);

// executes one suite (or `full`, the concatenation of the applicable ones with
// explicit SKIPPED records for the rest); stamps the config hash
CheckReport run_suite(const RunConfig& cfg, const std::string& suite);

} // namespace cohq
