#pragma once

// Three-population cortical column model: two second-order excitatory blocks
// and one inhibitory block coupled through a firing-rate sigmoid. The middle
// potential is a flat output, so the whole state and the input can be
// recovered from it and finitely many of its time derivatives. The measured
// potential parametrizes the model too, at the cost of integrating one
// linear block forward in time.

#include <array>
#include <vector>

#include "flatctl/integrate.hpp"
#include "flatctl/neural_mass.hpp"
#include "flatctl/sigmoids.hpp"
#include "flatctl/trajectory.hpp"

namespace flatctl {

struct JansenRitParams {
    double kappaE = 1.0; // excitatory rate constant, 1/s
    double kappaI = 1.0; // inhibitory rate constant, 1/s
    double mE = 1.0;     // excitatory synaptic gain
    double mI = 1.0;     // inhibitory synaptic gain
    double w13 = 1.0;    // input-block coupling from the measured potential
    double w23 = 1.0;    // inhibitory-block coupling from the measured potential
    double w31 = 1.0;    // measured-block coupling from the input block
    double w32 = 1.0;    // measured-block coupling from the inhibitory block
    SigmoidSpec F = logisticSigmoid(1.0, 0.0);
};

void validateJansenRit(const JansenRitParams& p);

// Flat output sample: the inhibitory potential and its time derivatives.
// Orders 1..4 determine the other two potentials; orders 5 and 6 are needed
// once the input itself is requested, since it carries two more derivatives
// through the chain.
struct FlatSignal2 {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
    double d4 = 0.0;
    double d5 = 0.0;
    double d6 = 0.0;
};

FlatSignal2 flatSignalAt(const RefTrajectory& ref, double t);

struct JrFlatChain {
    double v3 = 0.0, dv3 = 0.0, ddv3 = 0.0; // measured potential and derivatives
    double v1 = 0.0, dv1 = 0.0, ddv1 = 0.0; // input-block potential and derivatives
    double u = 0.0;                          // exogenous input reproducing the path
};

// Inverts the model along a flat-output sample. Throws DomainError naming the
// failing block when a sigmoid inversion argument leaves the range.
JrFlatChain jrFromFlat(const JansenRitParams& p, const FlatSignal2& v2);

// Closed-form matrix exponential of [[0, 1], [-kappa^2, -2*kappa]].
std::array<std::array<double, 2>, 2> expAt(double kappa, double t);

// Reconstructs the flat output from the measured potential sampled on a
// uniform grid with spacing dt, via the variation-of-constants formula with
// trapezoidal quadrature for the convolution term.
std::vector<double> v2FromV3(const JansenRitParams& p, const std::vector<double>& v3,
                             double dt, double v20, double dv20);

// Simulates the six-state first-order form (v1, v1', v2, v2', v3, v3').
SimResult jrSimulate(const JansenRitParams& p, const InputSignal& u,
                     const std::vector<double>& x0, const IntegratorConfig& cfg);

// Largest amplitude factor in (0, 1] keeping every sigmoid-inversion argument
// within the central band of the range (band = 0.05 keeps 5% clearance at
// both ends) when the oscillating part of the reference is scaled by it.
// Found by bisection; returns 0 when even the bare offset violates the band.
double jrScaleForBand(const JansenRitParams& p, double offset,
                      const std::vector<SinusoidTerm>& terms, double t0, double t1,
                      int samples = 400, double band = 0.05);

} // namespace flatctl
