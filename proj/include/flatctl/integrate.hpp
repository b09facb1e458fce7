#pragma once

// Explicit time integration for first-order ODE systems xdot = f(t, x).
// Two methods: a deterministic fixed-step RK4 for regression runs and an
// adaptive Dormand-Prince RK45 with PI-free step control for everything else.

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace flatctl {

enum class IntegratorMethod { RK4Fixed, RK45Adaptive };

struct IntegratorConfig {
    IntegratorMethod method = IntegratorMethod::RK45Adaptive;
    double dt = 1e-3;      // fixed-step size; initial step for the adaptive method
    double relTol = 1e-3;
    double absTol = 1e-6;
    double tStart = 0.0;
    double tEnd = 1.0;
};

// Vector field callback: returns xdot given (t, x).
using VectorField = std::function<std::vector<double>(double, const std::vector<double>&)>;

struct SimResult {
    std::vector<double> times;                 // strictly increasing, spans [tStart, tEnd]
    std::vector<std::vector<double>> states;   // one state vector per time
    std::vector<std::vector<double>> inputs;   // one input vector per time (filled by callers)
    std::map<std::string, std::vector<std::vector<double>>> auxiliaries; // named channels (reference, error, ...)

    // Dense output: linear interpolation between recorded times. Clamps to
    // the ends of the grid.
    std::vector<double> stateAt(double t) const;

    // Column extraction helpers used by reporting code.
    std::vector<double> stateChannel(int idx) const;
};

// Throws ConfigError on invalid configuration or dimension mismatch,
// DivergenceError when the derivative or state turns non-finite (message
// carries the offending time), StiffnessError when the adaptive step
// underflows below 1e-12 s.
SimResult integrate(const VectorField& f, const std::vector<double>& x0,
                    const IntegratorConfig& cfg);

} // namespace flatctl
