#pragma once

// Run reporting: pass/fail checks, JSON reports, CSV artifacts, and small
// SVG plots. All numeric output is formatted through printf-style %.17g so
// that two runs with identical inputs produce byte-identical files.

#include <map>
#include <string>
#include <vector>

namespace flatctl {

// One verified property of a scenario run. `relation` documents how `value`
// compares against `threshold` ("<=", ">=", or "reported" for informational
// rows that never fail).
struct CheckResult {
    std::string id;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string relation = "<=";
    std::string detail;
};

// Everything a scenario run produces besides its CSV/SVG artifacts.
struct RunReport {
    std::string scenario;
    unsigned int seed = 0;
    bool fixedStep = false;
    std::vector<CheckResult> checks;
    std::vector<std::string> artifacts;          // paths relative to the out dir
    std::map<std::string, std::string> settings; // flattened effective config
    std::string errorType;                       // empty when the run completed
    std::string errorMessage;

    bool completed() const { return errorType.empty(); }
    bool passed() const;
};

// Shortest round-trip representation of a double (17 significant digits).
std::string formatFull(double x);

// Human-scale representation for terminal summaries.
std::string formatShort(double x);

// Write a CSV file with the given header and pre-formatted rows. Every row
// must have exactly header.size() cells. Creates parent directories.
void writeCsv(const std::string& path, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows);

// Column-oriented convenience wrapper: all columns share the same length and
// are formatted with formatFull.
void writeNumericCsv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& columns);

// Serialize the report as pretty-printed JSON (schema "flatctl-report/1").
void writeReport(const std::string& path, const RunReport& report);

// One polyline in an SVG plot.
struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// Minimal self-contained line plot: axes, tick labels, one polyline per
// series with a small legend. Good enough for eyeballing a trajectory.
void writeSvgPlot(const std::string& path, const std::string& title,
                  const std::string& xLabel, const std::string& yLabel,
                  const std::vector<PlotSeries>& series);

} // namespace flatctl
