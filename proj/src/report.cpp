#include "flatctl/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "flatctl/errors.hpp"

namespace flatctl {

namespace {

void ensureParentDir(const std::string& path) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::filesystem::create_directories(p.parent_path());
    }
}

std::ofstream openOut(const std::string& path) {
    ensureParentDir(path);
    std::ofstream out(path, std::ios::binary); // binary: no platform newline games
    if (!out) {
        throw ConfigError("cannot open output file " + path);
    }
    return out;
}

} // namespace

bool RunReport::passed() const {
    if (!completed()) return false;
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.passed; });
}

std::string formatFull(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string formatShort(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

void writeCsv(const std::string& path, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out = openOut(path);
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size()) {
            throw ConfigError("csv row width " + std::to_string(row.size()) +
                              " does not match header width " +
                              std::to_string(header.size()));
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    }
}

void writeNumericCsv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& columns) {
    if (columns.size() != header.size()) {
        throw ConfigError("csv column count does not match header");
    }
    std::size_t n = columns.empty() ? 0 : columns.front().size();
    for (const auto& col : columns) {
        if (col.size() != n) {
            throw ConfigError("csv columns have mismatched lengths");
        }
    }
    std::vector<std::vector<std::string>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        rows[i].reserve(columns.size());
        for (const auto& col : columns) {
            rows[i].push_back(formatFull(col[i]));
        }
    }
    writeCsv(path, header, rows);
}

void writeReport(const std::string& path, const RunReport& report) {
    nlohmann::json j;
    j["schema"] = "flatctl-report/1";
    j["scenario"] = report.scenario;
    j["seed"] = report.seed;
    j["fixed_step"] = report.fixedStep;
    j["passed"] = report.passed();
    if (report.completed()) {
        j["error"] = nullptr;
    } else {
        j["error"] = {{"type", report.errorType}, {"message", report.errorMessage}};
    }
    j["settings"] = report.settings;
    j["checks"] = nlohmann::json::array();
    for (const CheckResult& c : report.checks) {
        nlohmann::json jc;
        jc["id"] = c.id;
        jc["passed"] = c.passed;
        jc["value"] = formatFull(c.value);
        jc["threshold"] = formatFull(c.threshold);
        jc["relation"] = c.relation;
        jc["detail"] = c.detail;
        j["checks"].push_back(jc);
    }
    j["artifacts"] = report.artifacts;

    std::ofstream out = openOut(path);
    out << j.dump(2) << '\n';
}

// ============================================================
// SVG plotting
// ============================================================

namespace {

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

Range axisRange(const std::vector<PlotSeries>& series, bool xAxis) {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& s : series) {
        const auto& v = xAxis ? s.x : s.y;
        for (double value : v) {
            if (!std::isfinite(value)) continue;
            lo = std::min(lo, value);
            hi = std::max(hi, value);
        }
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) return {0.0, 1.0};
    if (hi - lo < 1e-12) {
        double pad = std::max(1e-6, std::abs(lo) * 0.1 + 0.1);
        return {lo - pad, hi + pad};
    }
    double pad = (hi - lo) * 0.05;
    return {lo - pad, hi + pad};
}

const char* seriesColor(std::size_t i) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};
    return palette[i % (sizeof(palette) / sizeof(palette[0]))];
}

} // namespace

void writeSvgPlot(const std::string& path, const std::string& title,
                  const std::string& xLabel, const std::string& yLabel,
                  const std::vector<PlotSeries>& series) {
    const double width = 720, height = 480;
    const double left = 70, right = 30, top = 40, bottom = 50;
    const double plotW = width - left - right;
    const double plotH = height - top - bottom;

    Range rx = axisRange(series, true);
    Range ry = axisRange(series, false);
    auto mapX = [&](double x) { return left + (x - rx.lo) / (rx.hi - rx.lo) * plotW; };
    auto mapY = [&](double y) { return top + (ry.hi - y) / (ry.hi - ry.lo) * plotH; };

    std::ofstream out = openOut(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // frame and ticks
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plotW
        << "\" height=\"" << plotH << "\" fill=\"none\" stroke=\"#333\"/>\n";
    const int nTicks = 5;
    for (int i = 0; i <= nTicks; ++i) {
        double fx = rx.lo + (rx.hi - rx.lo) * i / nTicks;
        double fy = ry.lo + (ry.hi - ry.lo) * i / nTicks;
        double px = mapX(fx), py = mapY(fy);
        out << "<line x1=\"" << px << "\" y1=\"" << top + plotH << "\" x2=\"" << px
            << "\" y2=\"" << top + plotH + 5 << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << px << "\" y=\"" << top + plotH + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << formatShort(fx) << "</text>\n";
        out << "<line x1=\"" << left - 5 << "\" y1=\"" << py << "\" x2=\"" << left
            << "\" y2=\"" << py << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << left - 8 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << formatShort(fy) << "</text>\n";
    }
    out << "<text x=\"" << left + plotW / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << xLabel << "</text>\n";
    out << "<text x=\"18\" y=\"" << top + plotH / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << top + plotH / 2 << ")\">" << yLabel
        << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const PlotSeries& ps = series[s];
        std::size_t n = std::min(ps.x.size(), ps.y.size());
        out << "<polyline fill=\"none\" stroke=\"" << seriesColor(s)
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(ps.x[i]) || !std::isfinite(ps.y[i])) continue;
            out << formatShort(mapX(ps.x[i])) << ',' << formatShort(mapY(ps.y[i])) << ' ';
        }
        out << "\"/>\n";
        double ly = top + 16 + 16 * static_cast<double>(s);
        out << "<line x1=\"" << left + plotW - 120 << "\" y1=\"" << ly << "\" x2=\""
            << left + plotW - 95 << "\" y2=\"" << ly << "\" stroke=\"" << seriesColor(s)
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << left + plotW - 90 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << ps.label
            << "</text>\n";
    }
    out << "</svg>\n";
}

} // namespace flatctl
