#include "flatctl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flatctl/errors.hpp"

namespace flatctl {

namespace {

double namedParam(const KernelSpec& k, const std::string& name) {
    auto it = k.params.find(name);
    if (it == k.params.end()) {
        throw ConfigError(kernelName(k.kind) + " kernel is missing parameter " + name);
    }
    return it->second;
}

void requirePositive(double value, const std::string& what) {
    if (!(value > 0.0)) {
        throw ConfigError(what + " must be positive");
    }
}

void requireFinite(double value, const std::string& what) {
    if (!std::isfinite(value)) {
        throw ConfigError(what + " must be finite");
    }
}

} // namespace

// ============================================================
// Catalog
// ============================================================

std::string kernelName(KernelKind kind) {
    switch (kind) {
    case KernelKind::DiracOrigin: return "dirac-origin";
    case KernelKind::DiracShifted: return "dirac-shifted";
    case KernelKind::DiracSum: return "dirac-sum";
    case KernelKind::SingleExp: return "single-exp";
    case KernelKind::MultiExp: return "multi-exp";
    case KernelKind::Gaussian: return "gaussian";
    case KernelKind::AbsExp: return "abs-exp";
    case KernelKind::DecayingOsc: return "decaying-osc";
    case KernelKind::FlatHat: return "flat-hat";
    case KernelKind::MexicanHat: return "mexican-hat";
    case KernelKind::WizardHat: return "wizard-hat";
    }
    throw ConfigError("unknown kernel kind");
}

KernelSpec diracOriginKernel() {
    KernelSpec k;
    k.kind = KernelKind::DiracOrigin;
    return k;
}

KernelSpec diracShiftedKernel(double x0) {
    KernelSpec k;
    k.kind = KernelKind::DiracShifted;
    k.params["x0"] = x0;
    return k;
}

KernelSpec diracSumKernel(std::vector<double> weights, std::vector<double> locations) {
    KernelSpec k;
    k.kind = KernelKind::DiracSum;
    k.weights = std::move(weights);
    k.locations = std::move(locations);
    return k;
}

KernelSpec singleExpKernel(double a) {
    KernelSpec k;
    k.kind = KernelKind::SingleExp;
    k.params["a"] = a;
    return k;
}

KernelSpec multiExpKernel(std::vector<double> rates) {
    KernelSpec k;
    k.kind = KernelKind::MultiExp;
    k.rates = std::move(rates);
    return k;
}

KernelSpec gaussianKernel(double sigma) {
    KernelSpec k;
    k.kind = KernelKind::Gaussian;
    k.params["sigma"] = sigma;
    return k;
}

KernelSpec absExpKernel(double a) {
    KernelSpec k;
    k.kind = KernelKind::AbsExp;
    k.params["a"] = a;
    return k;
}

KernelSpec decayingOscKernel(double b) {
    KernelSpec k;
    k.kind = KernelKind::DecayingOsc;
    k.params["b"] = b;
    return k;
}

KernelSpec flatHatKernel(double chi) {
    KernelSpec k;
    k.kind = KernelKind::FlatHat;
    k.params["chi"] = chi;
    return k;
}

KernelSpec mexicanHatKernel(double amp1, double decay1, double amp2, double decay2) {
    KernelSpec k;
    k.kind = KernelKind::MexicanHat;
    k.params["Gamma1"] = amp1;
    k.params["gamma1"] = decay1;
    k.params["Gamma2"] = amp2;
    k.params["gamma2"] = decay2;
    return k;
}

KernelSpec wizardHatKernel() {
    KernelSpec k;
    k.kind = KernelKind::WizardHat;
    return k;
}

bool kernelIsDistribution(KernelKind kind) {
    return kind == KernelKind::DiracOrigin || kind == KernelKind::DiracShifted ||
           kind == KernelKind::DiracSum;
}

void validateKernel(const KernelSpec& k) {
    switch (k.kind) {
    case KernelKind::DiracOrigin:
        break;
    case KernelKind::DiracShifted:
        requireFinite(namedParam(k, "x0"), "x0");
        break;
    case KernelKind::DiracSum:
        if (k.weights.empty() || k.weights.size() != k.locations.size()) {
            throw ConfigError("dirac-sum needs matching nonempty weights and locations");
        }
        for (double w : k.weights) requireFinite(w, "dirac-sum weight");
        for (double x : k.locations) requireFinite(x, "dirac-sum location");
        break;
    case KernelKind::SingleExp:
        requirePositive(namedParam(k, "a"), "a");
        break;
    case KernelKind::MultiExp:
        if (k.rates.empty()) throw ConfigError("multi-exp needs at least one rate");
        for (double a : k.rates) requirePositive(a, "multi-exp rate");
        break;
    case KernelKind::Gaussian:
        requirePositive(namedParam(k, "sigma"), "sigma");
        break;
    case KernelKind::AbsExp:
        requirePositive(namedParam(k, "a"), "a");
        break;
    case KernelKind::DecayingOsc:
        requirePositive(namedParam(k, "b"), "b");
        break;
    case KernelKind::FlatHat:
        requirePositive(namedParam(k, "chi"), "chi");
        break;
    case KernelKind::MexicanHat:
        requireFinite(namedParam(k, "Gamma1"), "Gamma1");
        requireFinite(namedParam(k, "Gamma2"), "Gamma2");
        requirePositive(namedParam(k, "gamma1"), "gamma1");
        requirePositive(namedParam(k, "gamma2"), "gamma2");
        break;
    case KernelKind::WizardHat:
        break;
    }
}

double evalKernel(const KernelSpec& k, double x) {
    double ax = std::fabs(x);
    switch (k.kind) {
    case KernelKind::DiracOrigin:
    case KernelKind::DiracShifted:
    case KernelKind::DiracSum:
        throw UnsupportedError("Dirac kernels have no pointwise value; use diracReduce");
    case KernelKind::SingleExp:
        return x >= 0.0 ? std::exp(-namedParam(k, "a") * x) : 0.0;
    case KernelKind::MultiExp: {
        if (x < 0.0) return 0.0;
        double s = 0.0;
        for (double a : k.rates) s += std::exp(-a * x);
        return s;
    }
    case KernelKind::Gaussian: {
        double sigma = namedParam(k, "sigma");
        return std::exp(-x * x / (sigma * sigma));
    }
    case KernelKind::AbsExp:
        return std::exp(-namedParam(k, "a") * ax);
    case KernelKind::DecayingOsc: {
        double b = namedParam(k, "b");
        return std::exp(-b * ax) * (b * std::sin(ax) + std::cos(ax));
    }
    case KernelKind::FlatHat:
        return ax <= 0.5 * namedParam(k, "chi") ? 1.0 : 0.0;
    case KernelKind::MexicanHat:
        return namedParam(k, "Gamma1") * std::exp(-namedParam(k, "gamma1") * ax) -
               namedParam(k, "Gamma2") * std::exp(-namedParam(k, "gamma2") * ax);
    case KernelKind::WizardHat:
        return 0.25 * (1.0 - ax) * std::exp(-ax);
    }
    throw ConfigError("unknown kernel kind");
}

// ============================================================
// Fourier transforms
// ============================================================

bool fourierClosedFormAvailable(KernelKind kind) {
    return kind != KernelKind::SingleExp && kind != KernelKind::MultiExp;
}

std::complex<double> fourierClosedForm(const KernelSpec& k, double zeta) {
    validateKernel(k);
    double z2 = zeta * zeta;
    switch (k.kind) {
    case KernelKind::DiracOrigin:
        return {1.0, 0.0};
    case KernelKind::DiracShifted:
        return std::exp(std::complex<double>(0.0, -zeta * namedParam(k, "x0")));
    case KernelKind::DiracSum: {
        std::complex<double> s = 0.0;
        for (std::size_t i = 0; i < k.weights.size(); ++i) {
            s += k.weights[i] * std::exp(std::complex<double>(0.0, -zeta * k.locations[i]));
        }
        return s;
    }
    case KernelKind::FlatHat: {
        double chi = namedParam(k, "chi");
        double arg = 0.5 * zeta * chi;
        return {arg == 0.0 ? chi : chi * std::sin(arg) / arg, 0.0};
    }
    case KernelKind::Gaussian: {
        // Catalog expression kept verbatim for conformance reporting; the
        // exact transform carries sigma * sqrt(pi) instead of sigma / sqrt(2).
        double sigma = namedParam(k, "sigma");
        return {sigma / std::sqrt(2.0) * std::exp(-0.25 * sigma * sigma * z2), 0.0};
    }
    case KernelKind::AbsExp: {
        double a = namedParam(k, "a");
        return {2.0 * a / (a * a + z2), 0.0};
    }
    case KernelKind::DecayingOsc: {
        double b = namedParam(k, "b");
        double b2 = b * b;
        return {4.0 * b * (b2 + 1.0) /
                    (z2 * z2 + 2.0 * (b2 - 1.0) * z2 + (b2 + 1.0) * (b2 + 1.0)),
                0.0};
    }
    case KernelKind::MexicanHat: {
        // Catalog expression kept verbatim for conformance reporting; the
        // first numerator factor uses gamma2 where the exact transform has
        // gamma2 squared.
        double G1 = namedParam(k, "Gamma1");
        double G2 = namedParam(k, "Gamma2");
        double g1 = namedParam(k, "gamma1");
        double g2 = namedParam(k, "gamma2");
        return {2.0 * (G1 * g1 * (g2 + z2) - G2 * g2 * (g1 * g1 + z2)) /
                    ((g1 * g1 + z2) * (g2 * g2 + z2)),
                0.0};
    }
    case KernelKind::WizardHat:
        return {z2 / ((1.0 + z2) * (1.0 + z2)), 0.0};
    case KernelKind::SingleExp:
    case KernelKind::MultiExp:
        throw UnsupportedError(kernelName(k.kind) + " has no tabulated closed-form transform");
    }
    throw ConfigError("unknown kernel kind");
}

namespace {

// Adaptive Simpson on one panel, refining until the classic 15x error
// estimate meets the shared tolerance.
double simpsonRec(const std::function<double(double)>& f, double lo, double mid, double hi,
                  double flo, double fmid, double fhi, double whole, double tol, int depth) {
    double lm = 0.5 * (lo + mid);
    double rm = 0.5 * (mid + hi);
    double flm = f(lm);
    double frm = f(rm);
    double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    double delta = left + right - whole;
    if (std::fabs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    if (depth <= 0) {
        throw NumericalError("quadrature failed to converge");
    }
    return simpsonRec(f, lo, lm, mid, flo, flm, fmid, left, 0.5 * tol, depth - 1) +
           simpsonRec(f, mid, rm, hi, fmid, frm, fhi, right, 0.5 * tol, depth - 1);
}

double simpsonPanel(const std::function<double(double)>& f, double lo, double hi, double tol) {
    double mid = 0.5 * (lo + hi);
    double flo = f(lo);
    double fmid = f(mid);
    double fhi = f(hi);
    double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    return simpsonRec(f, lo, mid, hi, flo, fmid, fhi, whole, tol, 40);
}

// Splits [lo, hi] at the supplied interior breakpoints, then into panels no
// wider than a quarter period of cos(zeta x), and integrates each panel
// adaptively with a tolerance share proportional to its width.
double oscillatoryIntegral(const std::function<double(double)>& f, double lo, double hi,
                           double zeta, std::vector<double> breaks, double tol) {
    breaks.push_back(lo);
    breaks.push_back(hi);
    std::sort(breaks.begin(), breaks.end());
    double total = hi - lo;
    if (!(total > 0.0)) return 0.0;
    double maxWidth = M_PI / (2.0 * std::max(std::fabs(zeta), 1.0));
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        double a = std::max(breaks[i], lo);
        double b = std::min(breaks[i + 1], hi);
        if (!(b > a)) continue;
        int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / maxWidth)));
        double w = (b - a) / pieces;
        for (int p = 0; p < pieces; ++p) {
            double plo = a + p * w;
            double phi = p + 1 == pieces ? b : plo + w;
            sum += simpsonPanel(f, plo, phi, tol * (phi - plo) / total);
        }
    }
    return sum;
}

} // namespace

double defaultTruncation(const KernelSpec& k) {
    validateKernel(k);
    switch (k.kind) {
    case KernelKind::DiracOrigin:
        return 1.0;
    case KernelKind::DiracShifted:
        return std::fabs(namedParam(k, "x0")) + 1.0;
    case KernelKind::DiracSum: {
        double m = 0.0;
        for (double x : k.locations) m = std::max(m, std::fabs(x));
        return m + 1.0;
    }
    case KernelKind::SingleExp:
        return 30.0 / namedParam(k, "a");
    case KernelKind::MultiExp:
        return 30.0 / *std::min_element(k.rates.begin(), k.rates.end());
    case KernelKind::Gaussian:
        return 7.0 * namedParam(k, "sigma");
    case KernelKind::AbsExp:
        return 30.0 / namedParam(k, "a");
    case KernelKind::DecayingOsc:
        return 35.0 / namedParam(k, "b");
    case KernelKind::FlatHat:
        return 0.5 * namedParam(k, "chi");
    case KernelKind::MexicanHat:
        return 30.0 / std::min(namedParam(k, "gamma1"), namedParam(k, "gamma2"));
    case KernelKind::WizardHat:
        return 30.0;
    }
    throw ConfigError("unknown kernel kind");
}

std::complex<double> fourierNumeric(const KernelSpec& k, double zeta, double truncation) {
    validateKernel(k);
    requirePositive(truncation, "truncation");

    if (kernelIsDistribution(k.kind)) {
        // Sifting property: each delta contributes its weight at its location.
        std::vector<double> weights;
        std::vector<double> locations;
        if (k.kind == KernelKind::DiracOrigin) {
            weights = {1.0};
            locations = {0.0};
        } else if (k.kind == KernelKind::DiracShifted) {
            weights = {1.0};
            locations = {namedParam(k, "x0")};
        } else {
            weights = k.weights;
            locations = k.locations;
        }
        std::complex<double> s = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (std::fabs(locations[i]) <= truncation) {
                s += weights[i] * std::exp(std::complex<double>(0.0, -zeta * locations[i]));
            }
        }
        return s;
    }

    // Fold the two-sided integral onto [0, L]: the cosine side picks up
    // w(x) + w(-x) and the sine side w(-x) - w(x), which vanishes exactly
    // for even kernels.
    bool oneSided = k.kind == KernelKind::SingleExp || k.kind == KernelKind::MultiExp;
    std::vector<double> breaks;
    if (k.kind == KernelKind::FlatHat) {
        breaks.push_back(0.5 * namedParam(k, "chi"));
    }

    auto realPart = [&](double x) {
        double w = oneSided ? evalKernel(k, x) : evalKernel(k, x) + evalKernel(k, -x);
        return w * std::cos(zeta * x);
    };
    auto imagPart = [&](double x) {
        double w = oneSided ? -evalKernel(k, x) : evalKernel(k, -x) - evalKernel(k, x);
        return w * std::sin(zeta * x);
    };
    double re = oscillatoryIntegral(realPart, 0.0, truncation, zeta, breaks, 1e-8);
    double im =
        zeta == 0.0 ? 0.0 : oscillatoryIntegral(imagPart, 0.0, truncation, zeta, breaks, 1e-8);
    return {re, im};
}

std::complex<double> fourierNumeric(const KernelSpec& k, double zeta) {
    return fourierNumeric(k, zeta, defaultTruncation(k));
}

std::vector<FourierSample> fourierConformance(const std::vector<KernelSpec>& kernels,
                                              const std::vector<double>& zetas) {
    std::vector<FourierSample> rows;
    for (const KernelSpec& k : kernels) {
        if (!fourierClosedFormAvailable(k.kind)) continue;
        for (double zeta : zetas) {
            FourierSample row;
            row.kernel = kernelName(k.kind);
            row.zeta = zeta;
            row.closedForm = fourierClosedForm(k, zeta);
            row.numeric = fourierNumeric(k, zeta);
            row.absDiff = std::abs(row.closedForm - row.numeric);
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<KernelSpec> defaultFourierCatalog() {
    return {
        diracOriginKernel(),
        diracShiftedKernel(0.7),
        diracSumKernel({0.5, 0.25, 0.25}, {-1.0, 0.0, 2.0}),
        gaussianKernel(1.0),
        absExpKernel(1.0),
        decayingOscKernel(1.0),
        flatHatKernel(1.0),
        mexicanHatKernel(2.0, 2.0, 1.0, 0.5),
        wizardHatKernel(),
    };
}

// ============================================================
// Field reductions
// ============================================================

void validateField(const FieldParams& f) {
    if (!(f.tauSy > 0.0)) throw ConfigError("tauSy must be positive");
    if (!(f.domainHi > f.domainLo)) throw ConfigError("coupling interval must be nonempty");
    if (!std::isfinite(f.Ir)) throw ConfigError("Ir must be finite");
}

double gridSpacing(const SpatialGrid& g) {
    if (g.n < 2) throw ConfigError("spatial grid needs at least two points");
    if (!(g.hi > g.lo)) throw ConfigError("spatial grid interval must be nonempty");
    return (g.hi - g.lo) / (g.n - 1);
}

std::vector<double> gridPoints(const SpatialGrid& g) {
    double dr = gridSpacing(g);
    std::vector<double> pts(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) pts[static_cast<std::size_t>(i)] = g.lo + i * dr;
    return pts;
}

VectorField diracReduce(const FieldParams& f, const KernelSpec& k, const SpatialGrid& g,
                        const FieldInput& u) {
    validateField(f);
    validateKernel(k);
    if (f.saturating) {
        throw UnsupportedError("saturating synapse factor is not supported; the pointwise "
                               "reduction assumes it is identically one");
    }
    if (k.kind != KernelKind::DiracOrigin && k.kind != KernelKind::DiracShifted) {
        throw UnsupportedError("pointwise reduction requires a single Dirac kernel");
    }
    double x0 = k.kind == KernelKind::DiracShifted ? namedParam(k, "x0") : 0.0;
    if (x0 < f.domainLo || x0 > f.domainHi) {
        throw ConfigError("Dirac shift lies outside the coupling interval");
    }
    double dr = gridSpacing(g);
    long shiftSteps = std::lround(x0 / dr);
    if (std::fabs(x0 - shiftSteps * dr) > 1e-9) {
        throw ConfigError("Dirac shift must land on the spatial grid");
    }

    int n = g.n;
    double lo = g.lo;
    double aDecay = 1.0 / f.tauSy;
    double gain = f.Ir / f.tauSy;
    double indTol = 1e-12 * (1.0 + std::fabs(f.domainHi) + std::fabs(f.domainLo));
    double domLo = f.domainLo - indTol;
    double domHi = f.domainHi + indTol;

    return [=](double t, const std::vector<double>& v) {
        std::vector<double> dv(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            double r = lo + i * dr;
            double coupling = 0.0;
            long src = i - shiftSteps;
            double shifted = r - x0;
            if (src >= 0 && src < n && shifted >= domLo && shifted <= domHi) {
                coupling = gain * v[static_cast<std::size_t>(src)];
            }
            double forcing = u ? u(t, r) : 0.0;
            dv[static_cast<std::size_t>(i)] =
                -aDecay * v[static_cast<std::size_t>(i)] + coupling + aDecay * forcing;
        }
        return dv;
    };
}

// ============================================================
// Exponential-kernel field
// ============================================================

std::vector<double> expConvolve(double a, const std::vector<double>& v, double dr) {
    requirePositive(a, "a");
    requirePositive(dr, "dr");
    std::vector<double> q(v.size(), 0.0);
    if (v.empty()) return q;
    double decay = std::exp(-a * dr);
    for (std::size_t j = 1; j < v.size(); ++j) {
        q[j] = decay * q[j - 1] + 0.5 * dr * (decay * v[j - 1] + v[j]);
    }
    return q;
}

FieldSim simulateExpField(const FieldParams& f, const KernelSpec& k, const SpatialGrid& g,
                          const FieldInput& u, const std::function<double(double)>& v0,
                          double dt, double tEnd) {
    validateField(f);
    validateKernel(k);
    if (f.saturating) {
        throw UnsupportedError("saturating synapse factor is not supported here");
    }
    if (k.kind != KernelKind::SingleExp) {
        throw UnsupportedError("field simulation requires the one-sided exponential kernel");
    }
    if (!(dt > 0.0) || !(tEnd > 0.0)) throw ConfigError("dt and tEnd must be positive");
    double a = namedParam(k, "a");
    std::vector<double> pts = gridPoints(g);
    double dr = gridSpacing(g);

    VectorField rhs = [&, a, dr](double t, const std::vector<double>& v) {
        std::vector<double> q = expConvolve(a, v, dr);
        std::vector<double> dv(v.size());
        for (std::size_t j = 0; j < v.size(); ++j) {
            double forcing = u ? u(t, pts[j]) : 0.0;
            dv[j] = (-v[j] + f.Ir * q[j] + forcing) / f.tauSy;
        }
        return dv;
    };

    std::vector<double> x0(pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j) x0[j] = v0 ? v0(pts[j]) : 0.0;

    IntegratorConfig cfg;
    cfg.method = IntegratorMethod::RK4Fixed;
    cfg.dt = dt;
    cfg.tStart = 0.0;
    cfg.tEnd = tEnd;
    SimResult r = integrate(rhs, x0, cfg);

    FieldSim sim;
    sim.times = r.times;
    sim.points = pts;
    sim.v = std::move(r.states);
    sim.u.resize(sim.times.size(), std::vector<double>(pts.size(), 0.0));
    if (u) {
        for (std::size_t i = 0; i < sim.times.size(); ++i) {
            for (std::size_t j = 0; j < pts.size(); ++j) {
                sim.u[i][j] = u(sim.times[i], pts[j]);
            }
        }
    }
    return sim;
}

std::vector<std::vector<double>> expKernelPdeResidual(const FieldParams& f,
                                                      const KernelSpec& k,
                                                      const FieldSim& sim) {
    validateField(f);
    validateKernel(k);
    if (k.kind != KernelKind::SingleExp) {
        throw UnsupportedError("the mixed space-time identity covers the one-sided "
                               "exponential kernel only");
    }
    double a = namedParam(k, "a");
    std::size_t nt = sim.times.size();
    std::size_t nr = sim.points.size();
    if (nt < 3 || nr < 3) throw ConfigError("residual needs at least a 3x3 field");
    if (sim.v.size() != nt || sim.u.size() != nt) {
        throw ConfigError("field samples do not match the time grid");
    }
    double dt = sim.times[1] - sim.times[0];
    double dr = sim.points[1] - sim.points[0];

    std::vector<std::vector<double>> res(nt - 2, std::vector<double>(nr - 2, 0.0));
    for (std::size_t i = 1; i + 1 < nt; ++i) {
        const auto& vm = sim.v[i - 1];
        const auto& vc = sim.v[i];
        const auto& vp = sim.v[i + 1];
        const auto& uc = sim.u[i];
        for (std::size_t j = 1; j + 1 < nr; ++j) {
            double vtr = (vp[j + 1] - vp[j - 1] - vm[j + 1] + vm[j - 1]) / (4.0 * dt * dr);
            double vt = (vp[j] - vm[j]) / (2.0 * dt);
            double vr = (vc[j + 1] - vc[j - 1]) / (2.0 * dr);
            double ur = (uc[j + 1] - uc[j - 1]) / (2.0 * dr);
            res[i - 1][j - 1] = f.tauSy * vtr + a * f.tauSy * vt + vr +
                                (a - f.Ir) * vc[j] - ur - a * uc[j];
        }
    }
    return res;
}

} // namespace flatctl
