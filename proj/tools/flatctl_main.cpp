// ============================================================
// flatctl: run flatness scenarios, sweep parameters, list them
// ============================================================

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "flatctl/config.hpp"
#include "flatctl/errors.hpp"
#include "flatctl/report.hpp"
#include "flatctl/scenarios.hpp"

namespace {

struct CommonArgs {
    std::string scenario;
    std::string configPath;
    std::string outDir;
    unsigned int seed = 0;
    bool fixedStep = false;
    bool defaultsOnly = false;
    std::vector<std::string> sets;
    double lambda = 0.0;
    double e0 = 0.0;
    double tsw = 0.0;
    CLI::Option* lambdaOpt = nullptr;
    CLI::Option* e0Opt = nullptr;
    CLI::Option* tswOpt = nullptr;
};

void addCommonOptions(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--scenario", args.scenario, "scenario name (see list-scenarios)")
        ->required();
    CLI::Option* configOpt =
        cmd->add_option("--config", args.configPath, "INI file with overrides");
    cmd->add_option("--out", args.outDir,
                    "output directory (default flatctl-out/<scenario>)");
    cmd->add_option("--seed", args.seed, "seed for randomized reference terms");
    cmd->add_flag("--fixed-step", args.fixedStep,
                  "force the fixed-step integrator for bit-identical reruns");
    cmd->add_flag("--defaults", args.defaultsOnly, "run the built-in defaults only")
        ->excludes(configOpt);
    cmd->add_option("--set", args.sets,
                    "override one key as section.key=value (repeatable)");
    args.lambdaOpt =
        cmd->add_option("--lambda", args.lambda, "shorthand for --set gains.lambda=...");
    args.e0Opt = cmd->add_option("--e0", args.e0, "shorthand for --set initial.e0=...");
    args.tswOpt =
        cmd->add_option("--tsw", args.tsw, "shorthand for --set switching.t_sw=...");
}

// Config file first, then --set in order, then the explicit shorthands.
flatctl::ConfigMap buildOverrides(const CommonArgs& args) {
    flatctl::ConfigMap overrides;
    if (!args.configPath.empty()) overrides = flatctl::loadConfigFile(args.configPath);
    for (const std::string& s : args.sets) flatctl::applyOverride(overrides, s);
    if (args.lambdaOpt->count() > 0) {
        overrides.set("gains", "lambda", flatctl::formatFull(args.lambda));
    }
    if (args.e0Opt->count() > 0) {
        overrides.set("initial", "e0", flatctl::formatFull(args.e0));
    }
    if (args.tswOpt->count() > 0) {
        overrides.set("switching", "t_sw", flatctl::formatFull(args.tsw));
    }
    return overrides;
}

flatctl::ScenarioRequest buildRequest(const CommonArgs& args) {
    flatctl::ScenarioRequest req;
    req.name = args.scenario;
    req.seed = args.seed;
    req.fixedStep = args.fixedStep;
    req.outDir = args.outDir.empty() ? "flatctl-out/" + args.scenario : args.outDir;
    req.overrides = buildOverrides(args);
    return req;
}

int printSummary(const flatctl::ScenarioOutcome& out, const std::string& outDir) {
    const flatctl::RunReport& rep = out.report;
    if (!rep.completed()) {
        std::fprintf(stderr, "scenario %s: %s error: %s\n", rep.scenario.c_str(),
                     rep.errorType.c_str(), rep.errorMessage.c_str());
    } else {
        std::printf("scenario %s: %s (%zu checks)\n", rep.scenario.c_str(),
                    rep.passed() ? "PASS" : "FAIL", rep.checks.size());
        for (const flatctl::CheckResult& ch : rep.checks) {
            if (ch.relation == "reported") {
                std::printf("  [%s] %-28s %s (reported)\n", ch.passed ? "ok" : "FAIL",
                            ch.id.c_str(), flatctl::formatShort(ch.value).c_str());
            } else {
                std::printf("  [%s] %-28s %s %s %s\n", ch.passed ? "ok" : "FAIL",
                            ch.id.c_str(), flatctl::formatShort(ch.value).c_str(),
                            ch.relation.c_str(),
                            flatctl::formatShort(ch.threshold).c_str());
            }
        }
    }
    std::printf("report: %s\n",
                (std::filesystem::path(outDir) / "report.json").string().c_str());
    return out.exitCode;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"differential-flatness control scenarios for neural mass models"};
    app.require_subcommand(1);

    CommonArgs runArgs;
    CLI::App* runCmd = app.add_subcommand("run", "run one scenario end to end");
    addCommonOptions(runCmd, runArgs);

    CommonArgs sweepArgs;
    std::string sweepParam;
    std::string sweepValues;
    CLI::App* sweepCmd =
        app.add_subcommand("sweep", "run one scenario across a list of values");
    addCommonOptions(sweepCmd, sweepArgs);
    sweepCmd->add_option("--param", sweepParam, "config key to sweep, section.key")
        ->required();
    sweepCmd->add_option("--values", sweepValues, "comma-separated values")->required();

    CLI::App* listCmd =
        app.add_subcommand("list-scenarios", "print every scenario with a summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (app.got_subcommand(listCmd)) {
        for (const std::string& name : flatctl::scenarioNames()) {
            std::printf("%-16s %s\n", name.c_str(),
                        flatctl::scenarioDescription(name).c_str());
        }
        return 0;
    }

    try {
        if (app.got_subcommand(runCmd)) {
            flatctl::ScenarioRequest req = buildRequest(runArgs);
            return printSummary(flatctl::runScenario(req), req.outDir);
        }
        flatctl::ScenarioRequest req = buildRequest(sweepArgs);
        std::vector<std::string> values;
        std::string token;
        std::istringstream stream(sweepValues);
        while (std::getline(stream, token, ',')) {
            if (token.empty()) {
                std::fprintf(stderr, "config error: empty sweep value\n");
                return 1;
            }
            values.push_back(token);
        }
        return printSummary(flatctl::runSweep(req, sweepParam, values), req.outDir);
    } catch (const flatctl::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    }
}
