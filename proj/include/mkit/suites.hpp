#pragma once

// Verification suites behind the CLI: each one assembles an
// ExperimentReport from the module-level checks, with all randomness
// derived from the configured top-level seed.

#include "mkit/config.hpp"
#include "mkit/report.hpp"

namespace mkit {

const std::vector<std::string>& suite_names();  // excludes "all"

// Runs cfg.suite ("all" concatenates every suite with prefixed row names).
ExperimentReport run_suite(const ExperimentConfig& cfg);

}  // namespace mkit
