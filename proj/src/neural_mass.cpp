#include "flatctl/neural_mass.hpp"

#include <cmath>
#include <sstream>

#include "flatctl/errors.hpp"

namespace flatctl {
namespace {

void requirePositive(double v, const char* name) {
    if (!(v > 0.0)) {
        std::ostringstream os;
        os << name << " must be positive, got " << v;
        throw ConfigError(os.str());
    }
}

double ifParam(const IFPreset& p, const char* name) {
    auto it = p.params.find(name);
    if (it == p.params.end()) {
        std::ostringstream os;
        os << "integrate-and-fire preset requires parameter '" << name << "'";
        throw ConfigError(os.str());
    }
    return it->second;
}

double ifParamOr(const IFPreset& p, const char* name, double fallback) {
    auto it = p.params.find(name);
    return it == p.params.end() ? fallback : it->second;
}

[[noreturn]] void rethrowChannel(const char* channel, const DomainError& e) {
    throw DomainError(std::string(channel) + ": " + e.what());
}

} // namespace

// ------------------------------------------------------------
// Integrate-and-fire presets
// ------------------------------------------------------------

IFPreset leakyIF(double C, double gL, double vL) {
    return {IFKind::Leaky, {{"C", C}, {"gL", gL}, {"vL", vL}}};
}

IFPreset quadraticIF(double C, double gL, double vL, double deltaT, double vT, double IT) {
    return {IFKind::Quadratic,
            {{"C", C}, {"gL", gL}, {"vL", vL}, {"deltaT", deltaT}, {"vT", vT}, {"IT", IT}}};
}

IFPreset exponentialIF(double C, double gL, double vL, double deltaT, double vT) {
    return {IFKind::Exponential,
            {{"C", C}, {"gL", gL}, {"vL", vL}, {"deltaT", deltaT}, {"vT", vT}}};
}

IFPreset izhikevich2Var(double a, double b) {
    return {IFKind::Izhikevich2Var, {{"a", a}, {"b", b}}};
}

IFPreset izhikevichConductance(double a, double b, double E) {
    return {IFKind::IzhikevichConductance, {{"a", a}, {"b", b}, {"E", E}}};
}

// ------------------------------------------------------------
// Weak model laws
// ------------------------------------------------------------

double weakOpenLoop(const WeakEIParams& p, const RefTrajectory& ref, double t) {
    requirePositive(p.tau, "tau");
    double vr = evalRef(ref, t, 0);
    double dvr = evalRef(ref, t, 1);
    return -p.w * vr + inverse(p.F, p.tau * dvr + vr);
}

double weakClosedLoop(const WeakEIParams& p, const TrackingGains& g,
                      const RefTrajectory& ref, double t, double v) {
    requirePositive(p.tau, "tau");
    requirePositive(g.lambda, "lambda");
    double vr = evalRef(ref, t, 0);
    double dvr = evalRef(ref, t, 1);
    double ev = v - vr;
    return -p.w * v + inverse(p.F, p.tau * dvr + v - p.tau * g.lambda * ev);
}

// ------------------------------------------------------------
// Full model flat inputs
// ------------------------------------------------------------

FlatInputs wcFlatInputs(const WilsonCowanParams& p, const RefTrajectory& vE,
                        const RefTrajectory& vI, double t) {
    requirePositive(p.tauE, "tauE");
    requirePositive(p.tauI, "tauI");
    double ve = evalRef(vE, t, 0), dve = evalRef(vE, t, 1);
    double vi = evalRef(vI, t, 0), dvi = evalRef(vI, t, 1);
    FlatInputs out;
    try {
        out.Ie = p.wIE * vi - p.wEE * ve + inverse(p.Fe, p.tauE * dve + ve);
    } catch (const DomainError& e) {
        rethrowChannel("excitatory channel", e);
    }
    try {
        out.Ii = p.wEI * ve - p.wII * vi + inverse(p.Fi, p.tauI * dvi + vi);
    } catch (const DomainError& e) {
        rethrowChannel("inhibitory channel", e);
    }
    return out;
}

// ------------------------------------------------------------
// Asymmetric model
// ------------------------------------------------------------

AsymFlat asymFromFlat(const AsymWCParams& p, const RefTrajectory& ref, double t) {
    requirePositive(p.tauE, "tauE");
    requirePositive(p.tauI, "tauI");
    if (p.a * p.wI == 0.0) throw ConfigError("asymmetric coupling a*wI must be nonzero");
    // The inhibitory state follows from inverting the excitatory equation;
    // one jet order gives its rate for the input formula.
    Jet ve = evalRefJet(ref, t, 2);
    Jet arg = p.tauE * ve.timeDerivative() + ve;
    AsymFlat out;
    Jet vi = Jet::constant(0.0, 0);
    try {
        vi = inverseJet(p.Fe, arg) / (p.a * p.wI);
    } catch (const DomainError& e) {
        rethrowChannel("excitatory channel", e);
    }
    out.vI = vi.value();
    try {
        out.I = 0.5 * (p.wE * ve.value() + inverse(p.Fi, p.tauI * vi.derivative(1) + vi.value()));
    } catch (const DomainError& e) {
        rethrowChannel("inhibitory channel", e);
    }
    return out;
}

double asymModelDvE(const AsymWCParams& p, double vE, double vI) {
    requirePositive(p.tauE, "tauE");
    return (-vE + eval(p.Fe, p.a * p.wI * vI)) / p.tauE;
}

double asymClosedLoop(const AsymWCParams& p, const TrackingGains& g,
                      const RefTrajectory& ref, double t, const AsymState& state) {
    requirePositive(p.tauE, "tauE");
    requirePositive(p.tauI, "tauI");
    requirePositive(g.lambda, "lambda");
    requirePositive(g.mu, "mu");
    double ver = evalRef(ref, t, 0);
    double dver = evalRef(ref, t, 1);
    double ddver = evalRef(ref, t, 2);
    // Desired excitatory acceleration under eddot = -lambda e - mu edot.
    double ddDes = ddver - g.lambda * (state.vE - ver) - g.mu * (state.dvE - dver);
    double fePrime = deriv(p.Fe, p.a * p.wI * state.vI);
    if (std::fabs(fePrime) < 1e-12) {
        throw SaturationError("excitatory slope vanished: control authority lost");
    }
    // Inhibitory rate that realizes the desired acceleration, obtained by
    // differentiating the excitatory equation along the model.
    double dviDes = (p.tauE * ddDes + state.dvE) / (p.a * p.wI * fePrime);
    try {
        return 0.5 * (p.wE * state.vE + inverse(p.Fi, p.tauI * dviDes + state.vI));
    } catch (const DomainError& e) {
        rethrowChannel("inhibitory channel", e);
    }
}

// ------------------------------------------------------------
// Switching and simulation fields
// ------------------------------------------------------------

ControlLaw switchedLaw(const ControlLaw& uOpen, const ControlLaw& uClosed,
                       double tSw, const SigmoidSpec& sigma) {
    validateSigmoid(sigma);
    return [uOpen, uClosed, tSw, sigma](double t, const std::vector<double>& x) {
        double s = eval(sigma, t - tSw);
        return (1.0 - s) * uOpen(t, x) + s * uClosed(t, x);
    };
}

VectorField makeWeakField(const WeakEIParams& p, const ControlLaw& u) {
    requirePositive(p.tau, "tau");
    return [p, u](double t, const std::vector<double>& x) {
        double v = x[0];
        double input = u(t, x);
        return std::vector<double>{(-v + eval(p.F, p.w * v + input)) / p.tau};
    };
}

VectorField makeWilsonCowanField(const WilsonCowanParams& p, const ControlLaw& uE,
                                 const ControlLaw& uI) {
    requirePositive(p.tauE, "tauE");
    requirePositive(p.tauI, "tauI");
    return [p, uE, uI](double t, const std::vector<double>& x) {
        double ve = x[0], vi = x[1];
        double dve = (-ve + eval(p.Fe, p.wEE * ve - p.wIE * vi + uE(t, x))) / p.tauE;
        double dvi = (-vi + eval(p.Fi, p.wII * vi - p.wEI * ve + uI(t, x))) / p.tauI;
        return std::vector<double>{dve, dvi};
    };
}

VectorField makeAsymField(const AsymWCParams& p, const ControlLaw& u) {
    requirePositive(p.tauE, "tauE");
    requirePositive(p.tauI, "tauI");
    return [p, u](double t, const std::vector<double>& x) {
        double ve = x[0], vi = x[1];
        double dve = (-ve + eval(p.Fe, p.a * p.wI * vi)) / p.tauE;
        double dvi = (-vi + eval(p.Fi, 2.0 * u(t, x) - p.wE * ve)) / p.tauI;
        return std::vector<double>{dve, dvi};
    };
}

// ------------------------------------------------------------
// Integrate-and-fire simulation
// ------------------------------------------------------------

SimResult simulateIF(const IFPreset& preset, const InputSignal& I, const IntegratorConfig& cfg) {
    VectorField field;
    std::vector<double> x0;
    switch (preset.kind) {
        case IFKind::Leaky:
        case IFKind::Quadratic:
        case IFKind::Exponential: {
            double C = ifParam(preset, "C");
            double gL = ifParam(preset, "gL");
            double vL = ifParam(preset, "vL");
            requirePositive(C, "C");
            IFKind kind = preset.kind;
            double deltaT = 0.0, vT = 0.0, IT = 0.0;
            if (kind != IFKind::Leaky) {
                deltaT = ifParam(preset, "deltaT");
                vT = ifParam(preset, "vT");
                requirePositive(deltaT, "deltaT");
            }
            if (kind == IFKind::Quadratic) IT = ifParam(preset, "IT");
            field = [=](double t, const std::vector<double>& x) {
                double v = x[0];
                double F = 0.0;
                if (kind == IFKind::Quadratic) {
                    double d = v - vT;
                    F = gL / (2.0 * deltaT) * d * d + gL * d - IT;
                } else if (kind == IFKind::Exponential) {
                    F = gL * deltaT * std::exp((v - vT) / deltaT);
                }
                return std::vector<double>{(-gL * (v - vL) + F + I(t)) / C};
            };
            x0 = {ifParamOr(preset, "v0", vL)};
            break;
        }
        case IFKind::Izhikevich2Var: {
            double a = ifParam(preset, "a");
            double b = ifParam(preset, "b");
            field = [=](double t, const std::vector<double>& x) {
                double v = x[0], mu = x[1];
                return std::vector<double>{v * v - mu + I(t), a * (b * v - mu)};
            };
            x0 = {ifParamOr(preset, "v0", 0.0), ifParamOr(preset, "mu0", 0.0)};
            break;
        }
        case IFKind::IzhikevichConductance: {
            double a = ifParam(preset, "a");
            double b = ifParam(preset, "b");
            double E = ifParam(preset, "E");
            field = [=](double t, const std::vector<double>& x) {
                double v = x[0], mu = x[1];
                return std::vector<double>{v * v - mu * (E - v) + I(t), a * (b * v - mu)};
            };
            x0 = {ifParamOr(preset, "v0", 0.0), ifParamOr(preset, "mu0", 0.0)};
            break;
        }
    }
    SimResult r = integrate(field, x0, cfg);
    r.inputs.reserve(r.times.size());
    for (double t : r.times) r.inputs.push_back({I(t)});
    return r;
}

} // namespace flatctl
