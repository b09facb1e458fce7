#include "flatctl/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "flatctl/errors.hpp"

namespace flatctl {
namespace {

// ============================================================
// Dormand-Prince 5(4) tableau
// ============================================================

constexpr double kC[7] = {0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0};

constexpr double kA[7][6] = {
    {},
    {1.0 / 5.0},
    {3.0 / 40.0, 9.0 / 40.0},
    {44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0},
    {19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0},
    {9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0},
    {35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0},
};

// Fifth-order solution weights (identical to the last tableau row: FSAL).
constexpr double kB5[7] = {35.0 / 384.0,     0.0,          500.0 / 1113.0, 125.0 / 192.0,
                           -2187.0 / 6784.0, 11.0 / 84.0,  0.0};

// Embedded fourth-order weights for the error estimate.
constexpr double kB4[7] = {5179.0 / 57600.0, 0.0,           7571.0 / 16695.0, 393.0 / 640.0,
                           -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0};

constexpr double kMinStep = 1e-12;

void checkFinite(const std::vector<double>& v, double t, const char* what) {
    for (double value : v) {
        if (!std::isfinite(value)) {
            std::ostringstream os;
            os << "non-finite " << what << " at t = " << t;
            throw DivergenceError(os.str());
        }
    }
}

std::vector<double> evalField(const VectorField& f, double t, const std::vector<double>& x,
                              std::size_t dim) {
    std::vector<double> dx = f(t, x);
    if (dx.size() != dim) {
        std::ostringstream os;
        os << "vector field returned dimension " << dx.size() << ", expected " << dim;
        throw ConfigError(os.str());
    }
    checkFinite(dx, t, "derivative");
    return dx;
}

void validate(const IntegratorConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw ConfigError("integrator dt must be positive");
    if (!(cfg.relTol > 0.0)) throw ConfigError("integrator relTol must be positive");
    if (!(cfg.absTol > 0.0)) throw ConfigError("integrator absTol must be positive");
    if (!(cfg.tEnd > cfg.tStart)) throw ConfigError("integrator needs tEnd > tStart");
}

SimResult runFixed(const VectorField& f, const std::vector<double>& x0,
                   const IntegratorConfig& cfg) {
    const std::size_t dim = x0.size();
    SimResult out;
    std::vector<double> x = x0;
    double t = cfg.tStart;
    out.times.push_back(t);
    out.states.push_back(x);

    while (t < cfg.tEnd - 1e-12 * std::max(1.0, std::fabs(cfg.tEnd))) {
        double h = std::min(cfg.dt, cfg.tEnd - t);
        std::vector<double> k1 = evalField(f, t, x, dim);
        std::vector<double> xs(dim);
        for (std::size_t i = 0; i < dim; ++i) xs[i] = x[i] + 0.5 * h * k1[i];
        std::vector<double> k2 = evalField(f, t + 0.5 * h, xs, dim);
        for (std::size_t i = 0; i < dim; ++i) xs[i] = x[i] + 0.5 * h * k2[i];
        std::vector<double> k3 = evalField(f, t + 0.5 * h, xs, dim);
        for (std::size_t i = 0; i < dim; ++i) xs[i] = x[i] + h * k3[i];
        std::vector<double> k4 = evalField(f, t + h, xs, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        t += h;
        checkFinite(x, t, "state");
        out.times.push_back(t);
        out.states.push_back(x);
    }
    out.times.back() = cfg.tEnd;
    return out;
}

SimResult runAdaptive(const VectorField& f, const std::vector<double>& x0,
                      const IntegratorConfig& cfg) {
    const std::size_t dim = x0.size();
    SimResult out;
    std::vector<double> x = x0;
    double t = cfg.tStart;
    out.times.push_back(t);
    out.states.push_back(x);

    double h = std::min(cfg.dt, cfg.tEnd - cfg.tStart);
    std::vector<double> k[7];
    k[0] = evalField(f, t, x, dim); // FSAL slot, reused across accepted steps

    std::vector<double> xs(dim), xNew(dim), x4(dim);
    while (t < cfg.tEnd - 1e-12 * std::max(1.0, std::fabs(cfg.tEnd))) {
        h = std::min(h, cfg.tEnd - t);
        if (h < kMinStep) {
            std::ostringstream os;
            os << "adaptive step underflowed below " << kMinStep << " s at t = " << t
               << "; the system is too stiff for an explicit method";
            throw StiffnessError(os.str());
        }

        for (int s = 1; s < 7; ++s) {
            for (std::size_t i = 0; i < dim; ++i) {
                double acc = 0.0;
                for (int j = 0; j < s; ++j) acc += kA[s][j] * k[j][i];
                xs[i] = x[i] + h * acc;
            }
            k[s] = evalField(f, t + kC[s] * h, xs, dim);
        }

        double errSq = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            double acc5 = 0.0, acc4 = 0.0;
            for (int s = 0; s < 7; ++s) {
                acc5 += kB5[s] * k[s][i];
                acc4 += kB4[s] * k[s][i];
            }
            xNew[i] = x[i] + h * acc5;
            x4[i] = x[i] + h * acc4;
            double scale = cfg.absTol + cfg.relTol * std::max(std::fabs(x[i]), std::fabs(xNew[i]));
            double e = (xNew[i] - x4[i]) / scale;
            errSq += e * e;
        }
        double err = std::sqrt(errSq / static_cast<double>(dim));

        if (!std::isfinite(err)) {
            // Attribute the failure to a time; with absTol > 0 a non-finite
            // estimate implies a non-finite candidate state.
            checkFinite(xNew, t + h, "state");
            checkFinite(x4, t + h, "embedded state");
            throw NumericalError("non-finite step error estimate");
        }
        if (err <= 1.0) {
            t += h;
            x = xNew;
            checkFinite(x, t, "state");
            out.times.push_back(t);
            out.states.push_back(x);
            k[0] = k[6]; // FSAL: last stage is the derivative at the new point
        }

        double factor = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        h *= std::clamp(factor, 0.2, 5.0);
    }
    out.times.back() = cfg.tEnd;
    return out;
}

} // namespace

std::vector<double> SimResult::stateAt(double t) const {
    if (times.empty()) throw NumericalError("dense output requested from an empty result");
    if (t <= times.front()) return states.front();
    if (t >= times.back()) return states.back();
    auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t hi = static_cast<std::size_t>(it - times.begin());
    std::size_t lo = hi - 1;
    double span = times[hi] - times[lo];
    double w = span > 0.0 ? (t - times[lo]) / span : 0.0;
    std::vector<double> v(states[lo].size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = (1.0 - w) * states[lo][i] + w * states[hi][i];
    }
    return v;
}

std::vector<double> SimResult::stateChannel(int idx) const {
    std::vector<double> col;
    col.reserve(states.size());
    for (const auto& s : states) col.push_back(s.at(static_cast<std::size_t>(idx)));
    return col;
}

SimResult integrate(const VectorField& f, const std::vector<double>& x0,
                    const IntegratorConfig& cfg) {
    validate(cfg);
    if (x0.empty()) throw ConfigError("initial state must be non-empty");
    checkFinite(x0, cfg.tStart, "initial state");
    if (cfg.method == IntegratorMethod::RK4Fixed) return runFixed(f, x0, cfg);
    return runAdaptive(f, x0, cfg);
}

} // namespace flatctl
