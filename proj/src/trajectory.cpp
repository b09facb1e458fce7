#include "flatctl/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "flatctl/errors.hpp"

namespace flatctl {
namespace {

double getParam(const RefTrajectory& r, const char* name) {
    auto it = r.params.find(name);
    if (it == r.params.end()) {
        std::ostringstream os;
        os << "reference trajectory requires parameter '" << name << "'";
        throw ConfigError(os.str());
    }
    if (!std::isfinite(it->second)) {
        std::ostringstream os;
        os << "reference parameter '" << name << "' must be finite";
        throw ConfigError(os.str());
    }
    return it->second;
}

std::string indexedKey(const char* base, int i) {
    std::ostringstream os;
    os << base << i;
    return os.str();
}

// Closed-form jet of the reference at time t for the analytic families.
Jet analyticJet(const RefTrajectory& r, double t, int order) {
    Jet tj = Jet::variable(t, order);
    switch (r.family) {
        case RefFamily::Constant:
            return Jet::constant(getParam(r, "c"), order);
        case RefFamily::Line:
            return getParam(r, "a") + getParam(r, "b") * tj;
        case RefFamily::TanhStep: {
            double c = getParam(r, "c");
            double A = getParam(r, "A");
            double gamma = getParam(r, "gamma");
            double t0 = getParam(r, "t0");
            return c + A * jetTanh(gamma * (tj - t0));
        }
        case RefFamily::TanhOfLine: {
            double yi = getParam(r, "yi");
            double yf = getParam(r, "yf");
            double gamma = getParam(r, "gamma");
            double x0 = getParam(r, "x0");
            double xi = getParam(r, "xi");
            double xf = getParam(r, "xf");
            double T = getParam(r, "T");
            if (T <= 0.0) throw ConfigError("tanh-of-line span T must be positive");
            Jet x = xi + (xf - xi) / T * tj;
            return yi + 0.5 * (yf - yi) * (1.0 + jetTanh(gamma * (x - x0)));
        }
        case RefFamily::SinusoidSum: {
            auto offIt = r.params.find("offset");
            Jet acc = Jet::constant(offIt != r.params.end() ? offIt->second : 0.0, order);
            for (int i = 1;; ++i) {
                auto aIt = r.params.find(indexedKey("A", i));
                if (aIt == r.params.end()) {
                    if (i == 1) throw ConfigError("sinusoid sum needs at least one term (A1, omega1, phi1)");
                    break;
                }
                double A = aIt->second;
                double omega = getParam(r, indexedKey("omega", i).c_str());
                double phi = getParam(r, indexedKey("phi", i).c_str());
                acc = acc + A * jetSin(omega * tj + phi);
            }
            return acc;
        }
        case RefFamily::PolySpline:
            break; // handled by the caller via exact spline derivatives
    }
    throw ConfigError("unknown reference trajectory family");
}

} // namespace

// ------------------------------------------------------------
// Factories
// ------------------------------------------------------------

RefTrajectory constantRef(double c) {
    RefTrajectory r;
    r.family = RefFamily::Constant;
    r.params = {{"c", c}};
    return r;
}

RefTrajectory lineRef(double a, double b) {
    RefTrajectory r;
    r.family = RefFamily::Line;
    r.params = {{"a", a}, {"b", b}};
    return r;
}

RefTrajectory tanhStepRef(double c, double A, double gamma, double t0) {
    RefTrajectory r;
    r.family = RefFamily::TanhStep;
    r.params = {{"c", c}, {"A", A}, {"gamma", gamma}, {"t0", t0}};
    return r;
}

RefTrajectory tanhOfLineRef(double yi, double yf, double gamma, double x0,
                            double xi, double xf, double T) {
    RefTrajectory r;
    r.family = RefFamily::TanhOfLine;
    r.params = {{"yi", yi}, {"yf", yf}, {"gamma", gamma}, {"x0", x0},
                {"xi", xi}, {"xf", xf}, {"T", T}};
    return r;
}

RefTrajectory sinusoidSumRef(double offset, const std::vector<SinusoidTerm>& terms) {
    if (terms.empty()) throw ConfigError("sinusoid sum needs at least one term");
    RefTrajectory r;
    r.family = RefFamily::SinusoidSum;
    r.params["offset"] = offset;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        int n = static_cast<int>(i) + 1;
        r.params[indexedKey("A", n)] = terms[i].amplitude;
        r.params[indexedKey("omega", n)] = terms[i].omega;
        r.params[indexedKey("phi", n)] = terms[i].phase;
    }
    return r;
}

RefTrajectory splineRef(const PolySpline& spline) {
    validateSpline(spline);
    RefTrajectory r;
    r.family = RefFamily::PolySpline;
    r.spline = spline;
    return r;
}

// ------------------------------------------------------------
// Evaluation
// ------------------------------------------------------------

double evalRef(const RefTrajectory& r, double t, int order) {
    if (order < 0) throw ConfigError("derivative order must be non-negative");
    if (order > r.maxDerivOrder || order > Jet::kMaxOrder) {
        std::ostringstream os;
        os << "derivative order " << order << " exceeds the declared maximum "
           << r.maxDerivOrder;
        throw ConfigError(os.str());
    }
    if (r.family == RefFamily::PolySpline) return evalSpline(r.spline, t, order);
    return analyticJet(r, t, order).derivative(order);
}

Jet evalRefJet(const RefTrajectory& r, double t, int order) {
    if (order < 0) throw ConfigError("derivative order must be non-negative");
    if (order > r.maxDerivOrder || order > Jet::kMaxOrder) {
        std::ostringstream os;
        os << "derivative order " << order << " exceeds the declared maximum "
           << r.maxDerivOrder;
        throw ConfigError(os.str());
    }
    if (r.family != RefFamily::PolySpline) return analyticJet(r, t, order);
    std::vector<double> d(static_cast<std::size_t>(order) + 1);
    for (int k = 0; k <= order; ++k) d[static_cast<std::size_t>(k)] = evalSpline(r.spline, t, k);
    return Jet::fromDerivatives(d.data(), order);
}

// ------------------------------------------------------------
// Cyclicity
// ------------------------------------------------------------

bool checkCyclic(const SampledChannel& signal, double period, double tol) {
    const auto& times = signal.times;
    const auto& values = signal.values;
    if (times.size() != values.size()) throw ConfigError("cyclicity check: times/values size mismatch");
    if (times.size() < 3) throw ConfigError("cyclicity check needs at least three samples");
    if (!(period > 0.0)) throw ConfigError("cyclicity check needs a positive period");
    double span = times.back() - times.front();
    if (span < 2.0 * period - 1e-12) {
        std::ostringstream os;
        os << "cyclicity check needs a span of at least two periods (span " << span
           << ", period " << period << ")";
        throw ConfigError(os.str());
    }

    // Uniform grid with the period an integer number of samples: compare by
    // index shift, which is exact.
    std::size_t n = times.size();
    double dt = span / static_cast<double>(n - 1);
    bool uniform = true;
    for (std::size_t i = 0; i < n && uniform; ++i) {
        if (std::fabs(times[i] - (times.front() + static_cast<double>(i) * dt)) > 1e-9) uniform = false;
    }
    double maxDiff = 0.0;
    long shift = std::lround(period / dt);
    if (uniform && shift >= 1 && std::fabs(period - static_cast<double>(shift) * dt) <= 1e-9) {
        for (std::size_t i = static_cast<std::size_t>(shift); i < n; ++i) {
            maxDiff = std::max(maxDiff, std::fabs(values[i] - values[i - static_cast<std::size_t>(shift)]));
        }
        return maxDiff <= tol;
    }

    // General grid: linear interpolation of z(t - period).
    for (std::size_t i = 0; i < n; ++i) {
        double tPrev = times[i] - period;
        if (tPrev < times.front() - 1e-12) continue;
        auto it = std::upper_bound(times.begin(), times.end(), tPrev);
        std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - times.begin()), n - 1);
        std::size_t lo = hi == 0 ? 0 : hi - 1;
        double w = times[hi] > times[lo] ? (tPrev - times[lo]) / (times[hi] - times[lo]) : 0.0;
        double zPrev = (1.0 - w) * values[lo] + w * values[hi];
        maxDiff = std::max(maxDiff, std::fabs(values[i] - zPrev));
    }
    return maxDiff <= tol;
}

// ------------------------------------------------------------
// Spline utilities
// ------------------------------------------------------------

void validateSpline(const PolySpline& s) {
    if (s.degree < 0) throw ConfigError("spline degree must be non-negative");
    if (s.knots.size() < 2) throw ConfigError("spline needs at least two knots");
    for (std::size_t i = 1; i < s.knots.size(); ++i) {
        if (!(s.knots[i] > s.knots[i - 1])) throw ConfigError("spline knots must be strictly increasing");
    }
    if (s.controlPoints.size() != s.knots.size() - 1) {
        throw ConfigError("spline needs one control polygon per knot interval");
    }
    for (const auto& seg : s.controlPoints) {
        if (seg.size() != static_cast<std::size_t>(s.degree) + 1) {
            throw ConfigError("spline control polygon size must be degree + 1");
        }
    }
}

double evalSpline(const PolySpline& s, double t, int order) {
    validateSpline(s);
    if (order < 0) throw ConfigError("derivative order must be non-negative");
    double lo = s.knots.front();
    double hi = s.knots.back();
    if (t < lo - 1e-9 || t > hi + 1e-9) {
        std::ostringstream os;
        os << "time " << t << " is outside the spline span [" << lo << ", " << hi << "]";
        throw ConfigError(os.str());
    }
    t = std::clamp(t, lo, hi);
    auto it = std::upper_bound(s.knots.begin(), s.knots.end(), t);
    std::size_t j = std::min<std::size_t>(
        static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - s.knots.begin() - 1, 0)),
        s.controlPoints.size() - 1);
    double w = s.knots[j + 1] - s.knots[j];
    double u = (t - s.knots[j]) / w;

    if (order > s.degree) return 0.0;
    std::vector<double> c = s.controlPoints[j];
    double scale = 1.0;
    // Derivative of a Bezier curve: forward-difference the control points.
    for (int o = 0; o < order; ++o) {
        int m = static_cast<int>(c.size()) - 1;
        for (int i = 0; i < m; ++i) c[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i) + 1] - c[static_cast<std::size_t>(i)];
        c.resize(static_cast<std::size_t>(m));
        scale *= static_cast<double>(m) / w;
    }
    // De Casteljau on the reduced polygon.
    while (c.size() > 1) {
        for (std::size_t i = 0; i + 1 < c.size(); ++i) c[i] = (1.0 - u) * c[i] + u * c[i + 1];
        c.pop_back();
    }
    return scale * c[0];
}

double splineLowerBound(const PolySpline& s) {
    validateSpline(s);
    double bound = s.controlPoints[0][0];
    for (const auto& seg : s.controlPoints) {
        for (double p : seg) bound = std::min(bound, p);
    }
    return bound;
}

PolySpline splineDerivative(const PolySpline& s) {
    validateSpline(s);
    PolySpline d;
    d.knots = s.knots;
    d.degree = std::max(s.degree - 1, 0);
    d.controlPoints.reserve(s.controlPoints.size());
    for (std::size_t j = 0; j < s.controlPoints.size(); ++j) {
        double w = s.knots[j + 1] - s.knots[j];
        const auto& c = s.controlPoints[j];
        std::vector<double> seg;
        if (s.degree == 0) {
            seg.assign(1, 0.0);
        } else {
            seg.reserve(c.size() - 1);
            for (std::size_t i = 0; i + 1 < c.size(); ++i) {
                seg.push_back(static_cast<double>(s.degree) * (c[i + 1] - c[i]) / w);
            }
        }
        d.controlPoints.push_back(std::move(seg));
    }
    return d;
}

PolySpline elevateDegree(const PolySpline& s) {
    validateSpline(s);
    PolySpline e;
    e.knots = s.knots;
    e.degree = s.degree + 1;
    int n = s.degree;
    e.controlPoints.reserve(s.controlPoints.size());
    for (const auto& c : s.controlPoints) {
        std::vector<double> seg(static_cast<std::size_t>(n) + 2);
        seg.front() = c.front();
        seg.back() = c.back();
        for (int i = 1; i <= n; ++i) {
            double a = static_cast<double>(i) / static_cast<double>(n + 1);
            seg[static_cast<std::size_t>(i)] =
                a * c[static_cast<std::size_t>(i - 1)] + (1.0 - a) * c[static_cast<std::size_t>(i)];
        }
        e.controlPoints.push_back(std::move(seg));
    }
    return e;
}

PolySpline splineLinearCombo(double a, const PolySpline& s1, double b, const PolySpline& s2) {
    validateSpline(s1);
    validateSpline(s2);
    if (s1.degree != s2.degree) throw ConfigError("linear combination needs equal spline degrees");
    if (s1.knots.size() != s2.knots.size()) throw ConfigError("linear combination needs matching knots");
    for (std::size_t i = 0; i < s1.knots.size(); ++i) {
        if (std::fabs(s1.knots[i] - s2.knots[i]) > 1e-12) {
            throw ConfigError("linear combination needs matching knots");
        }
    }
    PolySpline out = s1;
    for (std::size_t j = 0; j < out.controlPoints.size(); ++j) {
        for (std::size_t i = 0; i < out.controlPoints[j].size(); ++i) {
            out.controlPoints[j][i] = a * s1.controlPoints[j][i] + b * s2.controlPoints[j][i];
        }
    }
    return out;
}

PolySpline makeUniformBSpline(const std::vector<double>& deBoor, double t0, double dt) {
    if (deBoor.size() < 4) throw ConfigError("uniform cubic B-spline needs at least four values");
    if (!(dt > 0.0)) throw ConfigError("uniform B-spline spacing must be positive");
    PolySpline s;
    s.degree = 3;
    std::size_t nSeg = deBoor.size() - 3;
    s.knots.resize(nSeg + 1);
    for (std::size_t j = 0; j <= nSeg; ++j) s.knots[j] = t0 + static_cast<double>(j) * dt;
    s.controlPoints.reserve(nSeg);
    for (std::size_t j = 0; j < nSeg; ++j) {
        double d0 = deBoor[j], d1 = deBoor[j + 1], d2 = deBoor[j + 2], d3 = deBoor[j + 3];
        s.controlPoints.push_back({(d0 + 4.0 * d1 + d2) / 6.0,
                                   (2.0 * d1 + d2) / 3.0,
                                   (d1 + 2.0 * d2) / 3.0,
                                   (d1 + 4.0 * d2 + d3) / 6.0});
    }
    return s;
}

} // namespace flatctl
