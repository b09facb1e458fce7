#pragma once

// Closed-form reference trajectories with analytic derivatives of any order
// (through jet arithmetic), a sampled-signal cyclicity check, and polynomial
// spline utilities with convex-hull positivity certificates.

#include <map>
#include <string>
#include <vector>

#include "flatctl/jet.hpp"

namespace flatctl {

enum class RefFamily { Constant, Line, TanhStep, TanhOfLine, SinusoidSum, PolySpline };

// Piecewise-polynomial curve in Bezier (control-point) form: segment j lives
// on [knots[j], knots[j+1]] and carries degree+1 control points.
struct PolySpline {
    std::vector<double> knots;
    std::vector<std::vector<double>> controlPoints;
    int degree = 3;
};

struct RefTrajectory {
    RefFamily family = RefFamily::Constant;
    std::map<std::string, double> params;
    int maxDerivOrder = 8;
    PolySpline spline; // only used by the PolySpline family
};

// ------------------------------------------------------------
// Factories
// ------------------------------------------------------------

RefTrajectory constantRef(double c);
RefTrajectory lineRef(double a, double b);                       // a + b t
RefTrajectory tanhStepRef(double c, double A, double gamma, double t0);
// y(t) = yi + ((yf - yi)/2)(1 + tanh(gamma (x(t) - x0))) with the abscissa
// x(t) = xi + (xf - xi) t / T sweeping linearly over [0, T].
RefTrajectory tanhOfLineRef(double yi, double yf, double gamma, double x0,
                            double xi, double xf, double T);
struct SinusoidTerm {
    double amplitude = 0.0;
    double omega = 0.0;
    double phase = 0.0;
};
RefTrajectory sinusoidSumRef(double offset, const std::vector<SinusoidTerm>& terms);
RefTrajectory splineRef(const PolySpline& spline);

// ------------------------------------------------------------
// Evaluation
// ------------------------------------------------------------

// Analytic order-th derivative at time t. ConfigError when order exceeds
// maxDerivOrder (or the jet capacity).
double evalRef(const RefTrajectory& r, double t, int order);

// Full truncated Taylor expansion at t, up to the given order.
Jet evalRefJet(const RefTrajectory& r, double t, int order);

// ------------------------------------------------------------
// Cyclicity
// ------------------------------------------------------------

struct SampledChannel {
    std::vector<double> times;
    std::vector<double> values;
};

// True iff max_t |z(t) - z(t - period)| <= tol over the overlap. On a uniform
// grid whose spacing divides the period (within 1e-9) the comparison is an
// exact index shift; otherwise values at t - period are linearly
// interpolated, which limits the meaningful tolerance to the interpolation
// error. Requires the span to cover at least two periods.
bool checkCyclic(const SampledChannel& signal, double period, double tol);

// ------------------------------------------------------------
// Spline utilities
// ------------------------------------------------------------

void validateSpline(const PolySpline& s);

// Value or derivative at t (clamped into the knot span within 1e-9 slack;
// outside that, ConfigError).
double evalSpline(const PolySpline& s, double t, int order = 0);

// Convex-hull lower bound: min over all control points. Always <= min_t s(t),
// so a positive bound certifies positivity; a negative bound is inconclusive.
double splineLowerBound(const PolySpline& s);

// Exact derivative spline (degree drops by one).
PolySpline splineDerivative(const PolySpline& s);

// Degree elevation: same curve, one degree higher, tighter hull.
PolySpline elevateDegree(const PolySpline& s);

// a*s1 + b*s2 for splines sharing knots and degree.
PolySpline splineLinearCombo(double a, const PolySpline& s1, double b, const PolySpline& s2);

// Uniform cubic B-spline through the given de Boor values, converted to
// Bezier segments (C^2 at the joins by construction). Segment j spans
// [t0 + j dt, t0 + (j+1) dt]; needs at least 4 values.
PolySpline makeUniformBSpline(const std::vector<double>& deBoor, double t0, double dt);

} // namespace flatctl
