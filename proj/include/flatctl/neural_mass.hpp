#pragma once

// Rate-model dynamics and their flatness-based control laws: the weakly
// coupled scalar model, the full two-population model, the asymmetric
// single-input variant, plus integrate-and-fire presets used as ODE
// regression targets. Open-loop laws reproduce a reference exactly when the
// model matches; closed-loop laws enforce exact linear error dynamics.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "flatctl/integrate.hpp"
#include "flatctl/sigmoids.hpp"
#include "flatctl/trajectory.hpp"

namespace flatctl {

// ------------------------------------------------------------
// Parameter records
// ------------------------------------------------------------

// Scalar rate model tau vdot = -v + F(w v + I).
struct WeakEIParams {
    double tau = 1.0;
    double w = 1.0;
    SigmoidSpec F;
};

// Two-population model
//   tauE vEdot = -vE + Fe(wEE vE - wIE vI + Ie)
//   tauI vIdot = -vI + Fi(wII vI - wEI vE + Ii)
struct WilsonCowanParams {
    double tauE = 1.0, tauI = 1.0;
    double wEE = 0.0, wIE = 0.0, wEI = 0.0, wII = 0.0;
    SigmoidSpec Fe, Fi;
};

// Asymmetric single-input variant
//   tauE vEdot = -vE + Fe(a wI vI)
//   tauI vIdot = -vI + Fi(2 I - wE vE)
// with the asymmetry factor a fixed to -1 (inhibition enters with a sign flip).
struct AsymWCParams {
    double tauE = 1.0, tauI = 1.0;
    double wI = 1.0, wE = 1.0;
    SigmoidSpec Fe, Fi;
    double a = -1.0;
};

// First-order gain lambda (weak model: edot = -lambda e) and second-order
// pair (lambda, mu) for the asymmetric law (eddot = -lambda e - mu edot).
struct TrackingGains {
    double lambda = 1.0;
    double mu = 0.0;
};

enum class IFKind { Leaky, Quadratic, Exponential, Izhikevich2Var, IzhikevichConductance };

// Integrate-and-fire preset. Initial conditions ride along in params: "v0"
// (defaults to vL for the conductance-based kinds, 0 otherwise) and "mu0"
// (defaults to 0) for the two-variable kinds. No reset rule is modeled.
struct IFPreset {
    IFKind kind = IFKind::Leaky;
    std::map<std::string, double> params;
};

IFPreset leakyIF(double C, double gL, double vL);
IFPreset quadraticIF(double C, double gL, double vL, double deltaT, double vT, double IT);
IFPreset exponentialIF(double C, double gL, double vL, double deltaT, double vT);
IFPreset izhikevich2Var(double a, double b);
IFPreset izhikevichConductance(double a, double b, double E);

// ------------------------------------------------------------
// Control laws
// ------------------------------------------------------------

// Open-loop input reproducing the reference on the weak model:
//   I_o(t) = -w v_r + phi(tau vdot_r + v_r),  phi = F^{-1}.
// DomainError when the reference drives phi out of range.
double weakOpenLoop(const WeakEIParams& p, const RefTrajectory& ref, double t);

// Closed-loop law enforcing edot = -lambda e exactly on the weak model:
//   I_c(t, v) = -w v + phi(tau vdot_r + v - tau lambda e),  e = v - v_r.
double weakClosedLoop(const WeakEIParams& p, const TrackingGains& g,
                      const RefTrajectory& ref, double t, double v);

struct FlatInputs {
    double Ie = 0.0;
    double Ii = 0.0;
};

// Open-loop input pair reproducing a reference pair on the full model; the
// DomainError message names the channel whose inverse failed.
FlatInputs wcFlatInputs(const WilsonCowanParams& p, const RefTrajectory& vE,
                        const RefTrajectory& vI, double t);

struct AsymFlat {
    double vI = 0.0;
    double I = 0.0;
};

// Flat parametrization of the asymmetric model: the inhibitory state and the
// single input that reproduce the excitatory reference.
AsymFlat asymFromFlat(const AsymWCParams& p, const RefTrajectory& ref, double t);

struct AsymState {
    double vE = 0.0;
    double vI = 0.0;
    double dvE = 0.0;
};

// Model-based excitatory rate of change (used to feed AsymState::dvE).
double asymModelDvE(const AsymWCParams& p, double vE, double vI);

// Closed-loop single input enforcing eddot = -lambda e - mu edot on the
// excitatory error. SaturationError when the excitatory slope collapses
// (|Fe'| < 1e-12), DomainError when the inhibitory inverse leaves its range.
double asymClosedLoop(const AsymWCParams& p, const TrackingGains& g,
                      const RefTrajectory& ref, double t, const AsymState& state);

// Control law as used by the simulation fields: input given time and state.
using ControlLaw = std::function<double(double, const std::vector<double>&)>;

// Sigmoid-weighted blend u = (1 - sigma(t - tSw)) uOpen + sigma(t - tSw) uClosed.
ControlLaw switchedLaw(const ControlLaw& uOpen, const ControlLaw& uClosed,
                       double tSw, const SigmoidSpec& sigma);

// ------------------------------------------------------------
// Simulation fields
// ------------------------------------------------------------

// State layouts: weak {v}; full {vE, vI}; asymmetric {vE, vI}.
VectorField makeWeakField(const WeakEIParams& p, const ControlLaw& u);
VectorField makeWilsonCowanField(const WilsonCowanParams& p, const ControlLaw& uE,
                                 const ControlLaw& uI);
VectorField makeAsymField(const AsymWCParams& p, const ControlLaw& u);

// ------------------------------------------------------------
// Integrate-and-fire simulation
// ------------------------------------------------------------

using InputSignal = std::function<double(double)>;

// Integrates the preset ODE under the given input; the result's inputs
// channel carries I(t) on the output grid. Divergence is expected (and
// reported as DivergenceError) for the superlinear kinds without reset.
SimResult simulateIF(const IFPreset& preset, const InputSignal& I, const IntegratorConfig& cfg);

} // namespace flatctl
