#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "flatctl/errors.hpp"
#include "flatctl/integrate.hpp"
#include "flatctl/sigmoids.hpp"

using namespace flatctl;

namespace {

const VectorField kLinearDecay = [](double, const std::vector<double>& x) {
    return std::vector<double>{-x[0]};
};

const VectorField kHarmonic = [](double, const std::vector<double>& x) {
    return std::vector<double>{x[1], -x[0]};
};

IntegratorConfig fixedCfg(double dt, double tEnd) {
    IntegratorConfig cfg;
    cfg.method = IntegratorMethod::RK4Fixed;
    cfg.dt = dt;
    cfg.tEnd = tEnd;
    return cfg;
}

} // namespace

TEST_CASE("fixed-step linear decay hits the closed form") {
    SimResult r = integrate(kLinearDecay, {1.0}, fixedCfg(1e-3, 1.0));
    CHECK(r.times.front() == 0.0);
    CHECK(r.times.back() == 1.0);
    CHECK(std::fabs(r.states.back()[0] - std::exp(-1.0)) <= 1e-9);
}

TEST_CASE("zero field returns a constant trajectory") {
    const VectorField zero = [](double, const std::vector<double>& x) {
        return std::vector<double>(x.size(), 0.0);
    };
    IntegratorConfig cfg;
    cfg.tEnd = 2.5;
    SimResult r = integrate(zero, {3.0, -1.5}, cfg);
    for (const auto& s : r.states) {
        CHECK(s[0] == 3.0);
        CHECK(s[1] == -1.5);
    }
    for (std::size_t i = 1; i < r.times.size(); ++i) CHECK(r.times[i] > r.times[i - 1]);
    CHECK(r.times.back() == 2.5);
}

TEST_CASE("adaptive harmonic oscillator closes its orbit") {
    IntegratorConfig cfg;
    cfg.method = IntegratorMethod::RK45Adaptive;
    cfg.relTol = 1e-9;
    cfg.absTol = 1e-9;
    cfg.tEnd = 2.0 * M_PI;
    SimResult r = integrate(kHarmonic, {1.0, 0.0}, cfg);
    CHECK(std::fabs(r.states.back()[0] - 1.0) <= 1e-6);
    CHECK(std::fabs(r.states.back()[1]) <= 1e-6);
    // Spot check mid-orbit against (cos t, -sin t). Dense output is linear
    // between accepted steps, so the band is interpolation-limited, not
    // tolerance-limited.
    auto mid = r.stateAt(M_PI / 3.0);
    CHECK(std::fabs(mid[0] - std::cos(M_PI / 3.0)) <= 1e-3);
    CHECK(std::fabs(mid[1] + std::sin(M_PI / 3.0)) <= 1e-3);
}

TEST_CASE("fixed-step method converges at fourth order") {
    double errCoarse = std::fabs(
        integrate(kLinearDecay, {1.0}, fixedCfg(2e-2, 1.0)).states.back()[0] - std::exp(-1.0));
    double errFine = std::fabs(
        integrate(kLinearDecay, {1.0}, fixedCfg(1e-2, 1.0)).states.back()[0] - std::exp(-1.0));
    CHECK(errCoarse / errFine >= 14.0);
}

TEST_CASE("adaptive result tracks a dense fixed-step reference") {
    // Saturating scalar rate model: slow relaxation toward a sigmoidal
    // fixed point, the shape every scenario model shares.
    SigmoidSpec F = logisticSigmoid(2.0, 0.5);
    const VectorField field = [&F](double t, const std::vector<double>& x) {
        double drive = 0.8 * x[0] + 0.4 * std::sin(t);
        return std::vector<double>{(-x[0] + eval(F, drive)) / 0.2};
    };
    IntegratorConfig ref = fixedCfg(1e-4, 3.0);
    IntegratorConfig adp;
    adp.method = IntegratorMethod::RK45Adaptive;
    adp.tEnd = 3.0;
    SimResult rRef = integrate(field, {0.1}, ref);
    SimResult rAdp = integrate(field, {0.1}, adp);
    double tolBand = 10.0 * (adp.absTol + adp.relTol);
    for (double t : {0.5, 1.0, 1.7, 2.4, 3.0}) {
        CHECK(std::fabs(rAdp.stateAt(t)[0] - rRef.stateAt(t)[0]) <= tolBand);
    }
}

TEST_CASE("embedded tableau satisfies the order conditions") {
    constexpr double c[7] = {0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0};
    constexpr double a[7][6] = {
        {},
        {1.0 / 5.0},
        {3.0 / 40.0, 9.0 / 40.0},
        {44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0},
        {19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0},
        {9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0},
        {35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0},
    };
    constexpr double b5[7] = {35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0,
                              -2187.0 / 6784.0, 11.0 / 84.0, 0.0};
    constexpr double b4[7] = {5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0,
                              -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0};

    // Row-sum consistency: sum_j a[i][j] = c[i].
    for (int i = 1; i < 7; ++i) {
        double rowSum = 0.0;
        for (int j = 0; j < i; ++j) rowSum += a[i][j];
        CHECK(rowSum == doctest::Approx(c[i]).epsilon(1e-14));
    }
    // Quadrature conditions sum b c^q = 1/(q+1) up to the claimed orders.
    for (const auto& [b, maxQ] : {std::pair<const double*, int>{b5, 4},
                                  std::pair<const double*, int>{b4, 3}}) {
        for (int q = 0; q <= maxQ; ++q) {
            double s = 0.0;
            for (int i = 0; i < 7; ++i) s += b[i] * std::pow(c[i], q);
            CHECK(s == doctest::Approx(1.0 / (q + 1)).epsilon(1e-13));
        }
    }
    // One genuinely coupled condition: sum_i b5_i sum_j a_ij c_j = 1/6.
    double coupled = 0.0;
    for (int i = 1; i < 7; ++i) {
        double inner = 0.0;
        for (int j = 0; j < i; ++j) inner += a[i][j] * c[j];
        coupled += b5[i] * inner;
    }
    CHECK(coupled == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
}

TEST_CASE("non-finite derivatives report the offending time") {
    const VectorField bad = [](double t, const std::vector<double>&) {
        double v = t > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0;
        return std::vector<double>{v};
    };
    IntegratorConfig cfg;
    cfg.tEnd = 1.0;
    try {
        integrate(bad, {0.0}, cfg);
        FAIL("expected a divergence error");
    } catch (const DivergenceError& e) {
        CHECK(std::string(e.what()).find("t = ") != std::string::npos);
    }
    CHECK_THROWS_AS(integrate(bad, {0.0}, fixedCfg(1e-2, 1.0)), DivergenceError);
}

TEST_CASE("extreme stiffness underflows the adaptive step") {
    const VectorField veryStiff = [](double, const std::vector<double>& x) {
        return std::vector<double>{-1e14 * x[0]};
    };
    IntegratorConfig cfg;
    cfg.tEnd = 1.0;
    CHECK_THROWS_AS(integrate(veryStiff, {1.0}, cfg), StiffnessError);
}

TEST_CASE("dense output interpolates linearly") {
    const VectorField ramp = [](double, const std::vector<double>&) {
        return std::vector<double>{2.0};
    };
    SimResult r = integrate(ramp, {1.0}, fixedCfg(0.1, 1.0));
    for (double t : {0.05, 0.333, 0.71}) {
        CHECK(r.stateAt(t)[0] == doctest::Approx(1.0 + 2.0 * t).epsilon(1e-12));
    }
    CHECK(r.stateAt(-5.0)[0] == 1.0);
    CHECK(r.stateAt(5.0)[0] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("invalid configurations are rejected") {
    IntegratorConfig cfg;
    cfg.tEnd = 0.0;
    CHECK_THROWS_AS(integrate(kLinearDecay, {1.0}, cfg), ConfigError);
    cfg = IntegratorConfig{};
    cfg.dt = 0.0;
    CHECK_THROWS_AS(integrate(kLinearDecay, {1.0}, cfg), ConfigError);
    cfg = IntegratorConfig{};
    cfg.relTol = -1.0;
    CHECK_THROWS_AS(integrate(kLinearDecay, {1.0}, cfg), ConfigError);
    CHECK_THROWS_AS(integrate(kLinearDecay, {}, IntegratorConfig{}), ConfigError);
    const VectorField wrongDim = [](double, const std::vector<double>&) {
        return std::vector<double>{0.0, 0.0};
    };
    CHECK_THROWS_AS(integrate(wrongDim, {1.0}, IntegratorConfig{}), ConfigError);
}
