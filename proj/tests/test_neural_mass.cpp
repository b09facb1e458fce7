#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "flatctl/errors.hpp"
#include "flatctl/neural_mass.hpp"

using namespace flatctl;

namespace {

WeakEIParams weakDefaults() {
    WeakEIParams p;
    p.tau = 1.0;
    p.w = 1.0;
    p.F = logisticSigmoid(1.0, 0.0);
    return p;
}

// Band-limited random flat output with the inverse argument kept strictly
// interior: offset 0.5, total excursion of tau*dv + v capped at `margin`.
RefTrajectory randomFlatOutput(std::mt19937& rng, double tau, double margin) {
    std::uniform_real_distribution<double> ampl(0.2, 1.0);
    std::uniform_real_distribution<double> freq(0.3, 2.5);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    std::vector<SinusoidTerm> terms(5);
    double weight = 0.0;
    for (auto& tm : terms) {
        tm.amplitude = ampl(rng);
        tm.omega = freq(rng);
        tm.phase = phase(rng);
        weight += tm.amplitude * (1.0 + tau * tm.omega);
    }
    for (auto& tm : terms) tm.amplitude *= margin / weight;
    return sinusoidSumRef(0.5, terms);
}

double phiPrime(const SigmoidSpec& F, double y) {
    return 1.0 / deriv(F, inverse(F, y));
}

} // namespace

// ============================================================
// Weak model
// ============================================================

TEST_CASE("open-loop input for a constant reference at the range midpoint") {
    WeakEIParams p = weakDefaults();
    CHECK(weakOpenLoop(p, constantRef(0.5), 1.7) == doctest::Approx(-0.5).epsilon(1e-14));
    // Generic equilibrium: I_o = -w v* + phi(v*).
    p.w = 0.6;
    double vStar = 0.42;
    double expected = -0.6 * vStar + inverse(p.F, vStar);
    CHECK(weakOpenLoop(p, constantRef(vStar), 0.0) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("open-loop synthesis zeroes the dynamics residual") {
    std::mt19937 rng(101);
    WeakEIParams p = weakDefaults();
    p.tau = 0.7;
    p.w = 0.9;
    for (int trial = 0; trial < 50; ++trial) {
        RefTrajectory ref = randomFlatOutput(rng, p.tau, 0.22);
        for (int i = 0; i <= 50; ++i) {
            double t = 5.0 * i / 50.0;
            double vr = evalRef(ref, t, 0);
            double dvr = evalRef(ref, t, 1);
            double Io = weakOpenLoop(p, ref, t);
            double residual = p.tau * dvr + vr - eval(p.F, p.w * vr + Io);
            CHECK(std::fabs(residual) < 1e-8);
        }
    }
}

TEST_CASE("closed loop collapses to open loop at zero error") {
    WeakEIParams p = weakDefaults();
    p.tau = 0.5;
    p.w = 0.7;
    p.F = logisticSigmoid(2.0, 0.3);
    TrackingGains g{3.0, 0.0};
    RefTrajectory ref = sinusoidSumRef(0.5, {{0.1, 1.0, 0.0}});
    for (double t : {0.0, 0.9, 2.2, 4.0}) {
        double vr = evalRef(ref, t, 0);
        CHECK(weakClosedLoop(p, g, ref, t, vr) ==
              doctest::Approx(weakOpenLoop(p, ref, t)).epsilon(1e-13));
    }
}

TEST_CASE("closed-loop error decays at exactly the commanded rate") {
    WeakEIParams p = weakDefaults();
    TrackingGains g{2.0, 0.0};
    RefTrajectory ref = sinusoidSumRef(0.5, {{0.08, 1.3, 0.0}});
    ControlLaw law = [&](double t, const std::vector<double>& x) {
        return weakClosedLoop(p, g, ref, t, x[0]);
    };
    IntegratorConfig cfg;
    cfg.relTol = 1e-9;
    cfg.absTol = 1e-11;
    cfg.tEnd = 3.0;
    double e0 = 0.1;
    SimResult r = integrate(makeWeakField(p, law), {evalRef(ref, 0.0, 0) + e0}, cfg);
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        double e = r.states[i][0] - evalRef(ref, r.times[i], 0);
        CHECK(std::fabs(e) <= e0 * std::exp(-g.lambda * r.times[i]) * (1.0 + 1e-3) + 1e-12);
    }
    double eAt1 = r.stateAt(1.0)[0] - evalRef(ref, 1.0, 0);
    CHECK(std::fabs(std::fabs(eAt1) - e0 * std::exp(-2.0)) < 1e-4);
}

TEST_CASE("feedback correction is bounded by the switching analysis") {
    WeakEIParams p = weakDefaults();
    p.tau = 0.5;
    p.w = 0.7;
    p.F = logisticSigmoid(2.0, 0.3);
    TrackingGains g{3.0, 0.0};
    RefTrajectory ref = sinusoidSumRef(0.5, {{0.1, 1.0, 0.4}});
    for (double t : {0.3, 1.1, 2.8}) {
        for (double ev : {-0.05, 0.02, 0.05}) {
            double vr = evalRef(ref, t, 0);
            double dvr = evalRef(ref, t, 1);
            double Io = weakOpenLoop(p, ref, t);
            double Ic = weakClosedLoop(p, g, ref, t, vr + ev);
            double a1 = p.tau * dvr + vr;
            double a2 = a1 + (1.0 - p.tau * g.lambda) * ev;
            double gamma = 0.0;
            for (int i = 0; i <= 200; ++i) {
                double y = std::min(a1, a2) + (std::fabs(a2 - a1)) * i / 200.0;
                gamma = std::max(gamma, std::fabs(phiPrime(p.F, y)));
            }
            double bound = (p.w + gamma * std::fabs(1.0 - p.tau * g.lambda)) * std::fabs(ev);
            CHECK(std::fabs(Ic - Io) <= bound + 1e-12);
        }
    }
}

TEST_CASE("a periodic reference produces a periodic open-loop input") {
    WeakEIParams p = weakDefaults();
    p.tau = 0.6;
    p.w = 0.8;
    double period = 1.25;
    RefTrajectory ref = sinusoidSumRef(0.5, {{0.06, 2.0 * M_PI / period, 0.3}});
    SampledChannel input;
    std::size_t n = 1251;
    for (std::size_t i = 0; i < n; ++i) {
        double t = 3.125 * static_cast<double>(i) / static_cast<double>(n - 1);
        input.times.push_back(t);
        input.values.push_back(weakOpenLoop(p, ref, t));
    }
    CHECK(checkCyclic(input, period, 1e-9));
}

// ============================================================
// Full two-population model
// ============================================================

TEST_CASE("flat input pair zeroes both dynamics residuals") {
    WilsonCowanParams p;
    p.tauE = 0.8;
    p.tauI = 0.5;
    p.wEE = 0.8;
    p.wIE = 0.5;
    p.wEI = 0.6;
    p.wII = 0.3;
    p.Fe = logisticSigmoid(1.5, 0.2);
    p.Fi = logisticSigmoid(2.0, -0.1);
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        RefTrajectory vE = randomFlatOutput(rng, p.tauE, 0.2);
        RefTrajectory vI = randomFlatOutput(rng, p.tauI, 0.2);
        for (int i = 0; i <= 25; ++i) {
            double t = 4.0 * i / 25.0;
            FlatInputs in = wcFlatInputs(p, vE, vI, t);
            double ve = evalRef(vE, t, 0), dve = evalRef(vE, t, 1);
            double vi = evalRef(vI, t, 0), dvi = evalRef(vI, t, 1);
            double rE = p.tauE * dve + ve - eval(p.Fe, p.wEE * ve - p.wIE * vi + in.Ie);
            double rI = p.tauI * dvi + vi - eval(p.Fi, p.wII * vi - p.wEI * ve + in.Ii);
            CHECK(std::fabs(rE) < 1e-8);
            CHECK(std::fabs(rI) < 1e-8);
        }
    }
}

TEST_CASE("constant pair and symmetric-weight special cases") {
    WilsonCowanParams p;
    p.wEE = 0.4;
    p.wIE = 0.4; // symmetric: excitatory weight terms cancel for vE == vI
    p.wEI = 0.2;
    p.wII = 0.7;
    p.Fe = logisticSigmoid(1.0, 0.0);
    p.Fi = logisticSigmoid(1.0, 0.0);
    FlatInputs stat = wcFlatInputs(p, constantRef(0.3), constantRef(0.6), 2.0);
    CHECK(stat.Ie == doctest::Approx(0.4 * 0.6 - 0.4 * 0.3 + inverse(p.Fe, 0.3)).epsilon(1e-13));
    CHECK(stat.Ii == doctest::Approx(0.2 * 0.3 - 0.7 * 0.6 + inverse(p.Fi, 0.6)).epsilon(1e-13));
    RefTrajectory same = sinusoidSumRef(0.5, {{0.05, 1.1, 0.2}});
    for (double t : {0.0, 1.3}) {
        FlatInputs in = wcFlatInputs(p, same, same, t);
        double arg = evalRef(same, t, 0) + evalRef(same, t, 1); // tauE = 1
        CHECK(in.Ie == doctest::Approx(inverse(p.Fe, arg)).epsilon(1e-12));
    }
}

TEST_CASE("inverse-domain failures name the offending channel") {
    WilsonCowanParams p;
    p.Fe = logisticSigmoid(1.0, 0.0);
    p.Fi = logisticSigmoid(1.0, 0.0);
    try {
        wcFlatInputs(p, constantRef(1.2), constantRef(0.5), 0.0);
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("excitatory") != std::string::npos);
    }
    try {
        wcFlatInputs(p, constantRef(0.5), constantRef(-0.2), 0.0);
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("inhibitory") != std::string::npos);
    }
}

// ============================================================
// Asymmetric single-input model
// ============================================================

namespace {

AsymWCParams asymDefaults() {
    AsymWCParams p;
    p.tauE = 1.0;
    p.tauI = 1.0;
    p.wI = 1.0;
    p.wE = 1.0;
    p.Fe = logisticSigmoid(1.0, 0.0);
    p.Fi = logisticSigmoid(1.0, 0.0);
    return p;
}

// Reference kept inside the window where both inverse arguments stay
// interior for the defaults above.
RefTrajectory asymReference() {
    return sinusoidSumRef(0.38, {{0.04, 0.7, 0.0}});
}

} // namespace

TEST_CASE("static flat inverse matches the closed-loop law at rest") {
    AsymWCParams p = asymDefaults();
    double c = 0.4;
    AsymFlat flat = asymFromFlat(p, constantRef(c), 0.0);
    double viStar = inverse(p.Fe, c) / (p.a * p.wI);
    CHECK(flat.vI == doctest::Approx(viStar).epsilon(1e-12));
    CHECK(flat.I == doctest::Approx(0.5 * (p.wE * c + inverse(p.Fi, viStar))).epsilon(1e-12));
    TrackingGains g{4.0, 4.0};
    AsymState rest{c, viStar, 0.0};
    CHECK(asymClosedLoop(p, g, constantRef(c), 0.0, rest) ==
          doctest::Approx(flat.I).epsilon(1e-12));
}

TEST_CASE("asymmetric tracking follows the second-order error dynamics") {
    AsymWCParams p = asymDefaults();
    RefTrajectory ref = asymReference();
    double e0 = 0.02;

    auto runCase = [&](TrackingGains g, auto exactDecay) {
        ControlLaw law = [&p, &g, &ref](double t, const std::vector<double>& x) {
            AsymState s{x[0], x[1], asymModelDvE(p, x[0], x[1])};
            return asymClosedLoop(p, g, ref, t, s);
        };
        // Start with a pure position offset: pick vI so that dvE(0) matches
        // the reference rate, making the initial error-rate zero.
        double ve0 = evalRef(ref, 0.0, 0) + e0;
        double dver0 = evalRef(ref, 0.0, 1);
        double vi0 = inverse(p.Fe, p.tauE * dver0 + ve0) / (p.a * p.wI);
        IntegratorConfig cfg;
        cfg.relTol = 1e-9;
        cfg.absTol = 1e-11;
        cfg.tEnd = 2.0;
        SimResult r = integrate(makeAsymField(p, law), {ve0, vi0}, cfg);
        for (double t : {0.5, 1.0, 2.0}) {
            double e = r.stateAt(t)[0] - evalRef(ref, t, 0);
            CHECK(std::fabs(e - exactDecay(t)) < 1e-4);
        }
    };

    // Critically damped coefficients: double pole at -2.
    runCase(TrackingGains{4.0, 4.0},
            [&](double t) { return e0 * (1.0 + 2.0 * t) * std::exp(-2.0 * t); });
    // Distinct poles -2 and -4 from (lambda, mu) = (8, 6).
    runCase(TrackingGains{8.0, 6.0},
            [&](double t) { return e0 * (2.0 * std::exp(-2.0 * t) - std::exp(-4.0 * t)); });
}

TEST_CASE("saturated excitatory slope aborts the asymmetric law") {
    AsymWCParams p = asymDefaults();
    TrackingGains g{4.0, 4.0};
    AsymState farOut{0.4, 60.0, 0.0}; // logistic slope at -60 is ~1e-26
    CHECK_THROWS_AS((void)asymClosedLoop(p, g, asymReference(), 0.0, farOut), SaturationError);
}

// ============================================================
// Switching
// ============================================================

TEST_CASE("step blend hands over exactly at the switch time") {
    ControlLaw uO = [](double t, const std::vector<double>&) { return std::sin(t); };
    ControlLaw uC = [](double t, const std::vector<double>&) { return std::cos(t); };
    ControlLaw u = switchedLaw(uO, uC, 2.0, heavisideSigmoid(1.0, 0.0));
    std::vector<double> x;
    CHECK(u(1.0, x) == std::sin(1.0));
    CHECK(u(2.0, x) == std::sin(2.0)); // step takes the open-loop value at the switch itself
    CHECK(u(2.0 + 1e-9, x) == std::cos(2.0 + 1e-9));
}

TEST_CASE("blending equal signals is the identity") {
    ControlLaw same = [](double t, const std::vector<double>&) { return 0.7 * t - 0.2; };
    ControlLaw u = switchedLaw(same, same, 1.0, logisticSigmoid(10.0, 0.0));
    std::vector<double> x;
    for (double t : {0.0, 0.5, 1.0, 3.0}) {
        CHECK(u(t, x) == doctest::Approx(same(t, x)).epsilon(1e-14));
    }
}

TEST_CASE("smooth blend passes the midpoint and respects the tail bound") {
    ControlLaw uO = [](double t, const std::vector<double>&) { return std::sin(t); };
    ControlLaw uC = [](double t, const std::vector<double>&) { return std::cos(t); };
    SigmoidSpec sigma = logisticSigmoid(10.0, 0.0); // ~0.1 s transition width
    double tSw = 2.0;
    ControlLaw u = switchedLaw(uO, uC, tSw, sigma);
    std::vector<double> x;
    CHECK(u(tSw, x) == doctest::Approx(0.5 * (std::sin(tSw) + std::cos(tSw))).epsilon(1e-13));
    double d = 0.5;
    double cap = eval(sigma, -d);
    for (double t = 0.0; t <= tSw - d; t += 0.1) {
        double dev = std::fabs(u(t, x) - uO(t, x));
        CHECK(dev <= cap * std::fabs(uC(t, x) - uO(t, x)) + 1e-13);
    }
}

// ============================================================
// Integrate-and-fire presets
// ============================================================

TEST_CASE("leaky preset sits at its resting point and relaxes in closed form") {
    IFPreset leaky = leakyIF(2.0, 0.5, -1.0);
    IntegratorConfig cfg;
    cfg.tEnd = 3.0;
    cfg.relTol = 1e-9;
    cfg.absTol = 1e-12;
    SimResult rest = simulateIF(leaky, [](double) { return 0.0; }, cfg);
    for (const auto& s : rest.states) CHECK(s[0] == doctest::Approx(-1.0).epsilon(1e-12));

    leaky.params["v0"] = 0.3;
    SimResult r = simulateIF(leaky, [](double) { return 0.8; }, cfg);
    double vInf = -1.0 + 0.8 / 0.5;
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        double expect = vInf + (0.3 - vInf) * std::exp(-0.5 * r.times[i] / 2.0);
        CHECK(std::fabs(r.states[i][0] - expect) < 1e-6);
    }
    CHECK(r.inputs.size() == r.times.size());
    CHECK(r.inputs.front()[0] == 0.8);
}

TEST_CASE("quadratic-rate preset matches the separable closed form") {
    IFPreset izh = izhikevich2Var(0.0, 0.0);
    izh.params["v0"] = -1.0;
    IntegratorConfig cfg;
    cfg.tEnd = 2.0;
    cfg.relTol = 1e-9;
    cfg.absTol = 1e-12;
    SimResult r = simulateIF(izh, [](double) { return 0.0; }, cfg);
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        CHECK(std::fabs(r.states[i][0] - (-1.0 / (1.0 + r.times[i]))) < 1e-6);
    }
}

TEST_CASE("conductance variant agrees across integration methods") {
    IFPreset izh = izhikevichConductance(0.1, 0.2, 1.0);
    IntegratorConfig adaptive;
    adaptive.tEnd = 1.0;
    adaptive.relTol = 1e-8;
    adaptive.absTol = 1e-10;
    IntegratorConfig fixed = adaptive;
    fixed.method = IntegratorMethod::RK4Fixed;
    fixed.dt = 1e-4;
    auto drive = [](double t) { return 0.1 + 0.05 * std::sin(3.0 * t); };
    SimResult a = simulateIF(izh, drive, adaptive);
    SimResult b = simulateIF(izh, drive, fixed);
    CHECK(std::fabs(a.states.back()[0] - b.states.back()[0]) < 1e-6);
    CHECK(std::fabs(a.states.back()[1] - b.states.back()[1]) < 1e-6);
}

TEST_CASE("superlinear presets diverge without a reset rule") {
    IFPreset quad = quadraticIF(1.0, 1.0, 0.0, 1.0, 1.0, 0.0);
    IntegratorConfig cfg;
    cfg.method = IntegratorMethod::RK4Fixed;
    cfg.dt = 1e-3;
    cfg.tEnd = 10.0;
    CHECK_THROWS_AS((void)simulateIF(quad, [](double) { return 3.0; }, cfg), DivergenceError);
}

TEST_CASE("missing preset parameters are configuration errors") {
    IFPreset broken{IFKind::Quadratic, {{"C", 1.0}, {"gL", 1.0}, {"vL", 0.0}}};
    IntegratorConfig cfg;
    CHECK_THROWS_AS((void)simulateIF(broken, [](double) { return 0.0; }, cfg), ConfigError);
    IFPreset badC = leakyIF(-1.0, 0.5, 0.0);
    CHECK_THROWS_AS((void)simulateIF(badC, [](double) { return 0.0; }, cfg), ConfigError);
}

// ============================================================
// Model equivalence (activity vs voltage coordinates)
// ============================================================

TEST_CASE("activity-model solutions solve the voltage model after the affine map") {
    // rho-model: tau rhodot = -rho + F(W rho + I); map v = W rho + I. The
    // mapped trajectory must satisfy tau vdot = -v + W F(v) + I, checked with
    // finite differences on the sampled path.
    const double tau = 0.8;
    const double W[2][2] = {{0.4, -0.3}, {0.2, 0.1}};
    const double I[2] = {0.3, -0.2};
    SigmoidSpec F = logisticSigmoid(1.2, 0.1);
    VectorField rhoField = [&](double, const std::vector<double>& rho) {
        std::vector<double> d(2);
        for (int r = 0; r < 2; ++r) {
            double drive = W[r][0] * rho[0] + W[r][1] * rho[1] + I[r];
            d[r] = (-rho[r] + eval(F, drive)) / tau;
        }
        return d;
    };
    IntegratorConfig cfg;
    cfg.method = IntegratorMethod::RK4Fixed;
    cfg.dt = 1e-3;
    cfg.tEnd = 2.0;
    SimResult r = integrate(rhoField, {0.2, 0.4}, cfg);

    auto vOf = [&](const std::vector<double>& rho, int c) {
        return W[c][0] * rho[0] + W[c][1] * rho[1] + I[c];
    };
    for (std::size_t i = 100; i + 100 < r.times.size(); i += 100) {
        double dt2 = r.times[i + 1] - r.times[i - 1];
        for (int c = 0; c < 2; ++c) {
            double v = vOf(r.states[i], c);
            double dv = (vOf(r.states[i + 1], c) - vOf(r.states[i - 1], c)) / dt2;
            double Fv0 = eval(F, vOf(r.states[i], 0));
            double Fv1 = eval(F, vOf(r.states[i], 1));
            double residual = tau * dv - (-v + W[c][0] * Fv0 + W[c][1] * Fv1 + I[c]);
            CHECK(std::fabs(residual) < 1e-6);
        }
    }
}
