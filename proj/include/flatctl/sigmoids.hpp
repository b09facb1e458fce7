#pragma once

// Firing-rate function catalog: values, first derivatives, inverses, and jet
// (Taylor) propagation for every family. Inverses never clamp: a value at or
// outside the range raises DomainError, because silent clamping would break
// the exact error dynamics the tracking laws guarantee.

#include <map>
#include <string>

#include "flatctl/jet.hpp"

namespace flatctl {

enum class SigmoidFamily {
    Heaviside,
    PiecewiseLinear,
    Logistic,
    Traub,
    Tanh,
    SquareRoot,
    NoisyRate,
    FlexibleShape,
    NakaRushton,
    Algebraic,
};

struct SigmoidSpec {
    SigmoidFamily family = SigmoidFamily::Logistic;
    std::map<std::string, double> params;
};

// ------------------------------------------------------------
// Factories with the conventional parameter names.
// ------------------------------------------------------------

SigmoidSpec heavisideSigmoid(double F0, double xi0);          // F0 * step(x - xi0), step(0) = 0
SigmoidSpec piecewiseLinearSigmoid(double beta, double xi0);  // ramp of slope beta from xi0, saturating at 1
SigmoidSpec logisticSigmoid(double beta, double vT);          // 1 / (1 + exp(-beta (x - vT)))
SigmoidSpec traubSigmoid(double alpha, double beta);          // 1 / (1 + exp(-(x - beta)/alpha))
SigmoidSpec tanhSigmoid(double F0, double alpha);             // F0 (1 + tanh(alpha x))
SigmoidSpec squareRootSigmoid(double F0, double xiT);         // F0 sqrt(x - xiT) above threshold, else 0
SigmoidSpec noisyRateSigmoid(double beta, double xiT);        // sqrt((x - xiT)/(1 - exp(-(x - xiT)/beta)))
SigmoidSpec flexibleShapeSigmoid(double Fm, double kappa, double mu, double sigma);
SigmoidSpec nakaRushtonSigmoid(double r, double theta, double n); // r x^n/(x^n + theta^n) for x >= 0
SigmoidSpec algebraicSigmoid();                               // x / sqrt(1 + x^2)

const char* sigmoidFamilyName(SigmoidFamily family);
SigmoidFamily sigmoidFamilyFromName(const std::string& name);

// Throws ConfigError when required parameters are missing or out of range.
void validateSigmoid(const SigmoidSpec& spec);

// ------------------------------------------------------------
// Core operations
// ------------------------------------------------------------

double eval(const SigmoidSpec& spec, double x);

// First derivative. UnsupportedError for the step family; DomainError exactly
// at a corner/threshold where the one-sided slopes disagree or blow up.
double deriv(const SigmoidSpec& spec, double x);

// Inverse on the open range. DomainError at or outside the range bounds.
double inverse(const SigmoidSpec& spec, double y);

// Propagate a jet through the family formula (analytic chain rule to any
// order). Families with kinks require the jet value to sit strictly inside a
// smooth branch when order >= 1.
Jet evalJet(const SigmoidSpec& spec, const Jet& x);

// Jet of the inverse: series inversion via a triangular solve. Requires the
// family slope at the preimage to be nonzero (SaturationError otherwise).
Jet inverseJet(const SigmoidSpec& spec, const Jet& y);

// Range bounds (infimum/supremum; +inf for unbounded families).
double sigmoidRangeMin(const SigmoidSpec& spec);
double sigmoidRangeMax(const SigmoidSpec& spec);

// True when inverse() is usable on the open range interior.
bool sigmoidInvertible(const SigmoidSpec& spec);

} // namespace flatctl
