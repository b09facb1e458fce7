#include "flatctl/jansen_rit.hpp"

#include <cmath>
#include <string>

#include "flatctl/errors.hpp"
#include "flatctl/jet.hpp"
#include "flatctl/simd.hpp"

namespace flatctl {

namespace {

void requirePositive(double value, const char* name) {
    if (!(value > 0.0)) {
        throw ConfigError(std::string(name) + " must be positive");
    }
}

// Second-order damping operator (d/dt + kappa)^2 applied to a jet. The
// result loses two orders relative to the argument.
Jet dampedSecondOrder(const Jet& x, double kappa) {
    Jet dx = x.timeDerivative();
    Jet ddx = dx.timeDerivative();
    return ddx + 2.0 * kappa * dx + kappa * kappa * x;
}

Jet invertNamed(const SigmoidSpec& F, const Jet& arg, const char* block) {
    try {
        return inverseJet(F, arg);
    } catch (const DomainError& e) {
        throw DomainError(std::string(block) + " inverse: " + e.what());
    }
}

} // namespace

void validateJansenRit(const JansenRitParams& p) {
    requirePositive(p.kappaE, "kappaE");
    requirePositive(p.kappaI, "kappaI");
    requirePositive(p.mE, "mE");
    requirePositive(p.mI, "mI");
    requirePositive(p.w23, "w23");
    requirePositive(p.w31, "w31");
    validateSigmoid(p.F);
}

FlatSignal2 flatSignalAt(const RefTrajectory& ref, double t) {
    FlatSignal2 s;
    s.value = evalRef(ref, t, 0);
    s.d1 = evalRef(ref, t, 1);
    s.d2 = evalRef(ref, t, 2);
    s.d3 = evalRef(ref, t, 3);
    s.d4 = evalRef(ref, t, 4);
    s.d5 = evalRef(ref, t, 5);
    s.d6 = evalRef(ref, t, 6);
    return s;
}

JrFlatChain jrFromFlat(const JansenRitParams& p, const FlatSignal2& v2) {
    validateJansenRit(p);
    const double derivs[7] = {v2.value, v2.d1, v2.d2, v2.d3, v2.d4, v2.d5, v2.d6};
    Jet v2j = Jet::fromDerivatives(derivs, 6);

    // Inhibitory block solved for the measured potential (order drops to 4).
    Jet arg3 = dampedSecondOrder(v2j, p.kappaI) * (1.0 / (p.kappaI * p.mI * p.w23));
    Jet v3 = invertNamed(p.F, arg3, "inhibitory block");

    // Measured block solved for the input-block potential (order drops to 2).
    Jet arg1 = dampedSecondOrder(v3, p.kappaE) * (1.0 / (p.kappaE * p.mE * p.w31)) -
               (p.w32 / p.w31) * evalJet(p.F, v2j);
    Jet v1 = invertNamed(p.F, arg1, "output block");

    JrFlatChain out;
    out.v3 = v3.value();
    out.dv3 = v3.derivative(1);
    out.ddv3 = v3.derivative(2);
    out.v1 = v1.value();
    out.dv1 = v1.derivative(1);
    out.ddv1 = v1.derivative(2);
    out.u = -p.w13 * eval(p.F, out.v3) +
            dampedSecondOrder(v1, p.kappaE).value() / (p.kappaE * p.mE);
    return out;
}

std::array<std::array<double, 2>, 2> expAt(double kappa, double t) {
    double decay = std::exp(-kappa * t);
    return {{{(1.0 + kappa * t) * decay, t * decay},
             {-kappa * kappa * t * decay, (1.0 - kappa * t) * decay}}};
}

std::vector<double> v2FromV3(const JansenRitParams& p, const std::vector<double>& v3,
                             double dt, double v20, double dv20) {
    validateJansenRit(p);
    if (!(dt > 0.0)) throw ConfigError("grid spacing must be positive");
    if (v3.empty()) throw ConfigError("measured-potential signal is empty");

    const std::size_t n = v3.size();
    std::vector<double> g(n);       // sigmoid of the measured potential
    std::vector<double> kernel(n);  // (t)e^{-kappa t} on the grid
    std::vector<double> kernelRev(n);
    for (std::size_t j = 0; j < n; ++j) {
        double tj = static_cast<double>(j) * dt;
        g[j] = eval(p.F, v3[j]);
        kernel[j] = tj * std::exp(-p.kappaI * tj);
    }
    for (std::size_t j = 0; j < n; ++j) kernelRev[j] = kernel[n - 1 - j];

    std::vector<double> out(n);
    const double gain = p.kappaI * p.mI * p.w23;
    for (std::size_t i = 0; i < n; ++i) {
        double t = static_cast<double>(i) * dt;
        auto homog = expAt(p.kappaI, t);
        double value = v20 * homog[0][0] + dv20 * homog[0][1];
        if (i > 0) {
            // Trapezoidal convolution; endpoint weights are halved. The
            // kernel vanishes at zero lag, so only the far endpoint matters.
            double conv = simd::dot(kernelRev.data() + (n - 1 - i), g.data(), i + 1);
            conv -= 0.5 * (kernel[i] * g[0] + kernel[0] * g[i]);
            value += gain * dt * conv;
        }
        out[i] = value;
    }
    return out;
}

SimResult jrSimulate(const JansenRitParams& p, const InputSignal& u,
                     const std::vector<double>& x0, const IntegratorConfig& cfg) {
    validateJansenRit(p);
    if (x0.size() != 6) {
        throw ConfigError("state must be (v1, v1', v2, v2', v3, v3')");
    }
    const double keSq = p.kappaE * p.kappaE;
    const double kiSq = p.kappaI * p.kappaI;
    VectorField f = [p, u, keSq, kiSq](double t, const std::vector<double>& x) {
        double fv1 = eval(p.F, x[0]);
        double fv2 = eval(p.F, x[2]);
        double fv3 = eval(p.F, x[4]);
        std::vector<double> d(6);
        d[0] = x[1];
        d[1] = p.kappaE * p.mE * (p.w13 * fv3 + u(t)) - 2.0 * p.kappaE * x[1] - keSq * x[0];
        d[2] = x[3];
        d[3] = p.kappaI * p.mI * p.w23 * fv3 - 2.0 * p.kappaI * x[3] - kiSq * x[2];
        d[4] = x[5];
        d[5] = p.kappaE * p.mE * (p.w31 * fv1 + p.w32 * fv2) - 2.0 * p.kappaE * x[5] -
               keSq * x[4];
        return d;
    };
    SimResult r = integrate(f, x0, cfg);
    r.inputs.reserve(r.times.size());
    for (double t : r.times) r.inputs.push_back({u(t)});
    return r;
}

double jrScaleForBand(const JansenRitParams& p, double offset,
                      const std::vector<SinusoidTerm>& terms, double t0, double t1,
                      int samples, double band) {
    validateJansenRit(p);
    if (samples < 2) throw ConfigError("need at least two band samples");
    double lo = sigmoidRangeMin(p.F);
    double hi = sigmoidRangeMax(p.F);
    if (!std::isfinite(lo) || !std::isfinite(hi)) return 1.0;
    double argLo = lo + band * (hi - lo);
    double argHi = hi - band * (hi - lo);

    auto passes = [&](double scale) {
        std::vector<SinusoidTerm> scaled = terms;
        for (auto& tm : scaled) tm.amplitude *= scale;
        RefTrajectory ref = sinusoidSumRef(offset, scaled);
        try {
            for (int i = 0; i <= samples; ++i) {
                double t = t0 + (t1 - t0) * i / samples;
                FlatSignal2 sig = flatSignalAt(ref, t);
                double arg3 = (sig.d2 + 2.0 * p.kappaI * sig.d1 + p.kappaI * p.kappaI * sig.value) /
                              (p.kappaI * p.mI * p.w23);
                if (arg3 < argLo || arg3 > argHi) return false;
                JrFlatChain chain = jrFromFlat(p, sig);
                // v1 was produced as phi(arg1), so F(v1) recovers the
                // inversion argument of the output block exactly.
                double arg1 = eval(p.F, chain.v1);
                if (arg1 < argLo || arg1 > argHi) return false;
            }
        } catch (const Error&) {
            return false;
        }
        return true;
    };

    if (!passes(0.0)) return 0.0;
    if (passes(1.0)) return 1.0;
    double good = 0.0;
    double bad = 1.0;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (good + bad);
        if (passes(mid)) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    return good;
}

} // namespace flatctl
