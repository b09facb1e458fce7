#pragma once

// Named end-to-end scenarios behind the command-line tool: each one builds a
// model from config, runs it, evaluates a fixed set of numerical checks, and
// writes report.json plus CSV/SVG artifacts into an output directory.

#include <string>
#include <vector>

#include "flatctl/config.hpp"
#include "flatctl/report.hpp"

namespace flatctl {

// Scenario names in listing order.
std::vector<std::string> scenarioNames();

// One-line summary shown by the list command.
std::string scenarioDescription(const std::string& name);

// Full default configuration. The defaults define the key schema: merged
// user files and overrides may only touch keys that exist here.
ConfigMap scenarioDefaults(const std::string& name);

struct ScenarioRequest {
    std::string name;
    ConfigMap overrides; // parsed user config file plus command-line sets
    std::string outDir;
    unsigned int seed = 0;
    bool fixedStep = false; // force the fixed-step integrator everywhere
};

struct ScenarioOutcome {
    RunReport report;
    int exitCode = 0; // 0 all checks passed, 1 config error, 2 runtime error or failed checks
};

// Run one scenario end to end. Errors are captured into the report (and the
// exit code) rather than thrown; report.json is written either way.
ScenarioOutcome runScenario(const ScenarioRequest& req);

// Run the scenario once per value of the `section.key` parameter, each into
// its own subdirectory of base.outDir, and write aggregate.csv collecting
// every check of every run. The exit code is the worst sub-run exit code.
// Throws ConfigError for a malformed parameter path or an empty value list.
ScenarioOutcome runSweep(const ScenarioRequest& base, const std::string& param,
                         const std::vector<std::string>& values);

} // namespace flatctl
