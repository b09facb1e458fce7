#include "flatctl/sigmoids.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "flatctl/errors.hpp"

namespace flatctl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Beyond this magnitude the logistic argument is saturated to machine
// precision and every derivative is below 1e-15, so jets degenerate to
// constants instead of feeding overflowing exponentials into recurrences.
constexpr double kLogisticSat = 36.0;

double getParam(const SigmoidSpec& spec, const char* name) {
    auto it = spec.params.find(name);
    if (it == spec.params.end()) {
        std::ostringstream os;
        os << "sigmoid family " << sigmoidFamilyName(spec.family)
           << " requires parameter '" << name << "'";
        throw ConfigError(os.str());
    }
    if (!std::isfinite(it->second)) {
        std::ostringstream os;
        os << "sigmoid parameter '" << name << "' must be finite";
        throw ConfigError(os.str());
    }
    return it->second;
}

double getPositive(const SigmoidSpec& spec, const char* name) {
    double v = getParam(spec, name);
    if (v <= 0.0) {
        std::ostringstream os;
        os << "sigmoid parameter '" << name << "' must be positive, got " << v;
        throw ConfigError(os.str());
    }
    return v;
}

[[noreturn]] void throwOutsideRange(const SigmoidSpec& spec, double y) {
    std::ostringstream os;
    os << "value " << y << " is outside the open range of sigmoid family "
       << sigmoidFamilyName(spec.family) << ", cannot invert";
    throw DomainError(os.str());
}

// ------------------------------------------------------------
// NoisyRate helpers
//
// g(z) = z / (1 - exp(-z/beta)) has a removable singularity at z = 0 with
// limit beta. Near zero we evaluate psi(w) = w / (1 - exp(-w)) through its
// Bernoulli series, which is accurate to ~1e-16 for |w| < 0.5:
//   psi(w) = 1 + w/2 + w^2/12 - w^4/720 + w^6/30240 - w^8/1209600 + ...
// ------------------------------------------------------------

constexpr double kPsiCoeff[9] = {
    1.0, 0.5, 1.0 / 12.0, 0.0, -1.0 / 720.0, 0.0, 1.0 / 30240.0, 0.0, -1.0 / 1209600.0,
};

double psiSeries(double w) {
    double r = kPsiCoeff[8];
    for (int k = 7; k >= 0; --k) r = r * w + kPsiCoeff[k];
    return r;
}

double psiSeriesDeriv(double w) {
    double r = 8.0 * kPsiCoeff[8];
    for (int k = 7; k >= 1; --k) r = r * w + k * kPsiCoeff[k];
    return r;
}

Jet psiSeriesJet(const Jet& w) {
    Jet r = Jet::constant(kPsiCoeff[8], w.order());
    for (int k = 7; k >= 0; --k) r = r * w + kPsiCoeff[k];
    return r;
}

double noisyRateG(double z, double beta) {
    double w = z / beta;
    if (std::fabs(w) < 0.5) return beta * psiSeries(w);
    return z / (1.0 - std::exp(-w));
}

// ------------------------------------------------------------
// FlexibleShape helpers. softplus(s) = log(1 + exp(s)) evaluated without
// overflow; the family is Fm (1 - exp(-kappa softplus(s))).
// ------------------------------------------------------------

double softplus(double s) {
    if (s > 36.0) return s;
    if (s < -36.0) return std::exp(s);
    return std::log1p(std::exp(s));
}

} // namespace

// ------------------------------------------------------------
// Factories
// ------------------------------------------------------------

SigmoidSpec heavisideSigmoid(double F0, double xi0) {
    return {SigmoidFamily::Heaviside, {{"F0", F0}, {"xi0", xi0}}};
}

SigmoidSpec piecewiseLinearSigmoid(double beta, double xi0) {
    return {SigmoidFamily::PiecewiseLinear, {{"beta", beta}, {"xi0", xi0}}};
}

SigmoidSpec logisticSigmoid(double beta, double vT) {
    return {SigmoidFamily::Logistic, {{"beta", beta}, {"vT", vT}}};
}

SigmoidSpec traubSigmoid(double alpha, double beta) {
    return {SigmoidFamily::Traub, {{"alpha", alpha}, {"beta", beta}}};
}

SigmoidSpec tanhSigmoid(double F0, double alpha) {
    return {SigmoidFamily::Tanh, {{"F0", F0}, {"alpha", alpha}}};
}

SigmoidSpec squareRootSigmoid(double F0, double xiT) {
    return {SigmoidFamily::SquareRoot, {{"F0", F0}, {"xiT", xiT}}};
}

SigmoidSpec noisyRateSigmoid(double beta, double xiT) {
    return {SigmoidFamily::NoisyRate, {{"beta", beta}, {"xiT", xiT}}};
}

SigmoidSpec flexibleShapeSigmoid(double Fm, double kappa, double mu, double sigma) {
    return {SigmoidFamily::FlexibleShape,
            {{"Fm", Fm}, {"kappa", kappa}, {"mu", mu}, {"sigma", sigma}}};
}

SigmoidSpec nakaRushtonSigmoid(double r, double theta, double n) {
    return {SigmoidFamily::NakaRushton, {{"r", r}, {"theta", theta}, {"n", n}}};
}

SigmoidSpec algebraicSigmoid() {
    return {SigmoidFamily::Algebraic, {}};
}

const char* sigmoidFamilyName(SigmoidFamily family) {
    switch (family) {
        case SigmoidFamily::Heaviside: return "heaviside";
        case SigmoidFamily::PiecewiseLinear: return "piecewise-linear";
        case SigmoidFamily::Logistic: return "logistic";
        case SigmoidFamily::Traub: return "traub";
        case SigmoidFamily::Tanh: return "tanh";
        case SigmoidFamily::SquareRoot: return "square-root";
        case SigmoidFamily::NoisyRate: return "noisy-rate";
        case SigmoidFamily::FlexibleShape: return "flexible-shape";
        case SigmoidFamily::NakaRushton: return "naka-rushton";
        case SigmoidFamily::Algebraic: return "algebraic";
    }
    throw ConfigError("unknown sigmoid family enumerator");
}

SigmoidFamily sigmoidFamilyFromName(const std::string& name) {
    static const std::map<std::string, SigmoidFamily> table = {
        {"heaviside", SigmoidFamily::Heaviside},
        {"piecewise-linear", SigmoidFamily::PiecewiseLinear},
        {"logistic", SigmoidFamily::Logistic},
        {"traub", SigmoidFamily::Traub},
        {"tanh", SigmoidFamily::Tanh},
        {"square-root", SigmoidFamily::SquareRoot},
        {"noisy-rate", SigmoidFamily::NoisyRate},
        {"flexible-shape", SigmoidFamily::FlexibleShape},
        {"naka-rushton", SigmoidFamily::NakaRushton},
        {"algebraic", SigmoidFamily::Algebraic},
    };
    auto it = table.find(name);
    if (it == table.end()) throw ConfigError("unknown sigmoid family name '" + name + "'");
    return it->second;
}

void validateSigmoid(const SigmoidSpec& spec) {
    switch (spec.family) {
        case SigmoidFamily::Heaviside:
            getPositive(spec, "F0");
            getParam(spec, "xi0");
            break;
        case SigmoidFamily::PiecewiseLinear:
            getPositive(spec, "beta");
            getParam(spec, "xi0");
            break;
        case SigmoidFamily::Logistic:
            getPositive(spec, "beta");
            getParam(spec, "vT");
            break;
        case SigmoidFamily::Traub:
            getPositive(spec, "alpha");
            getParam(spec, "beta");
            break;
        case SigmoidFamily::Tanh:
            getPositive(spec, "F0");
            getPositive(spec, "alpha");
            break;
        case SigmoidFamily::SquareRoot:
            getPositive(spec, "F0");
            getParam(spec, "xiT");
            break;
        case SigmoidFamily::NoisyRate:
            getPositive(spec, "beta");
            getParam(spec, "xiT");
            break;
        case SigmoidFamily::FlexibleShape:
            getPositive(spec, "Fm");
            getPositive(spec, "kappa");
            getParam(spec, "mu");
            getPositive(spec, "sigma");
            break;
        case SigmoidFamily::NakaRushton:
            getPositive(spec, "r");
            getPositive(spec, "theta");
            getPositive(spec, "n");
            break;
        case SigmoidFamily::Algebraic:
            break;
    }
}

// ------------------------------------------------------------
// eval
// ------------------------------------------------------------

double eval(const SigmoidSpec& spec, double x) {
    switch (spec.family) {
        case SigmoidFamily::Heaviside: {
            double F0 = getPositive(spec, "F0");
            double xi0 = getParam(spec, "xi0");
            return x <= xi0 ? 0.0 : F0;
        }
        case SigmoidFamily::PiecewiseLinear: {
            double beta = getPositive(spec, "beta");
            double xi0 = getParam(spec, "xi0");
            if (x <= xi0) return 0.0;
            if (x >= xi0 + 1.0 / beta) return 1.0;
            return beta * (x - xi0);
        }
        case SigmoidFamily::Logistic: {
            double beta = getPositive(spec, "beta");
            double vT = getParam(spec, "vT");
            return 1.0 / (1.0 + std::exp(-beta * (x - vT)));
        }
        case SigmoidFamily::Traub: {
            double alpha = getPositive(spec, "alpha");
            double beta = getParam(spec, "beta");
            return 1.0 / (1.0 + std::exp(-(x - beta) / alpha));
        }
        case SigmoidFamily::Tanh: {
            double F0 = getPositive(spec, "F0");
            double alpha = getPositive(spec, "alpha");
            return F0 * (1.0 + std::tanh(alpha * x));
        }
        case SigmoidFamily::SquareRoot: {
            double F0 = getPositive(spec, "F0");
            double xiT = getParam(spec, "xiT");
            return x <= xiT ? 0.0 : F0 * std::sqrt(x - xiT);
        }
        case SigmoidFamily::NoisyRate: {
            double beta = getPositive(spec, "beta");
            double xiT = getParam(spec, "xiT");
            double g = noisyRateG(x - xiT, beta);
            return g > 0.0 ? std::sqrt(g) : 0.0;
        }
        case SigmoidFamily::FlexibleShape: {
            double Fm = getPositive(spec, "Fm");
            double kappa = getPositive(spec, "kappa");
            double mu = getParam(spec, "mu");
            double sigma = getPositive(spec, "sigma");
            double s = std::sqrt(2.0) * (x - mu) / sigma;
            return Fm * (-std::expm1(-kappa * softplus(s)));
        }
        case SigmoidFamily::NakaRushton: {
            double r = getPositive(spec, "r");
            double theta = getPositive(spec, "theta");
            double n = getPositive(spec, "n");
            if (x <= 0.0) return 0.0;
            double xn = std::pow(x, n);
            return r * xn / (xn + std::pow(theta, n));
        }
        case SigmoidFamily::Algebraic:
            return x / std::sqrt(1.0 + x * x);
    }
    throw ConfigError("unknown sigmoid family enumerator");
}

// ------------------------------------------------------------
// deriv
// ------------------------------------------------------------

double deriv(const SigmoidSpec& spec, double x) {
    switch (spec.family) {
        case SigmoidFamily::Heaviside:
            throw UnsupportedError("the step family has no pointwise derivative");
        case SigmoidFamily::PiecewiseLinear: {
            double beta = getPositive(spec, "beta");
            double xi0 = getParam(spec, "xi0");
            double top = xi0 + 1.0 / beta;
            if (x == xi0 || x == top)
                throw DomainError("piecewise-linear slope is undefined at a corner");
            return (x > xi0 && x < top) ? beta : 0.0;
        }
        case SigmoidFamily::Logistic: {
            double beta = getPositive(spec, "beta");
            double F = eval(spec, x);
            return beta * F * (1.0 - F);
        }
        case SigmoidFamily::Traub: {
            double alpha = getPositive(spec, "alpha");
            double F = eval(spec, x);
            return F * (1.0 - F) / alpha;
        }
        case SigmoidFamily::Tanh: {
            double F0 = getPositive(spec, "F0");
            double alpha = getPositive(spec, "alpha");
            double th = std::tanh(alpha * x);
            return F0 * alpha * (1.0 - th * th);
        }
        case SigmoidFamily::SquareRoot: {
            double F0 = getPositive(spec, "F0");
            double xiT = getParam(spec, "xiT");
            if (x < xiT) return 0.0;
            if (x == xiT)
                throw DomainError("square-root slope is unbounded at the threshold");
            return 0.5 * F0 / std::sqrt(x - xiT);
        }
        case SigmoidFamily::NoisyRate: {
            double beta = getPositive(spec, "beta");
            double xiT = getParam(spec, "xiT");
            double z = x - xiT;
            double w = z / beta;
            double g = noisyRateG(z, beta);
            if (g <= 0.0) return 0.0; // deep left tail underflowed to zero
            double dg; // d/dz of g(z) = beta psi(z/beta) is psi'(w)
            if (std::fabs(w) < 0.5) {
                dg = psiSeriesDeriv(w);
            } else {
                double e = std::exp(-w);
                double denom = 1.0 - e;
                dg = (denom - w * e) / (denom * denom);
            }
            return 0.5 * dg / std::sqrt(g);
        }
        case SigmoidFamily::FlexibleShape: {
            double Fm = getPositive(spec, "Fm");
            double kappa = getPositive(spec, "kappa");
            double mu = getParam(spec, "mu");
            double sigma = getPositive(spec, "sigma");
            double s = std::sqrt(2.0) * (x - mu) / sigma;
            // Fm kappa (1 + e^s)^(-kappa-1) e^s sqrt(2)/sigma, via softplus
            double val = Fm * kappa * std::exp(s - (kappa + 1.0) * softplus(s));
            return val * std::sqrt(2.0) / sigma;
        }
        case SigmoidFamily::NakaRushton: {
            double r = getPositive(spec, "r");
            double theta = getPositive(spec, "theta");
            double n = getPositive(spec, "n");
            if (x < 0.0) return 0.0;
            if (x == 0.0) {
                if (n > 1.0) return 0.0;
                throw DomainError(
                    "naka-rushton slope is discontinuous at zero for exponent <= 1");
            }
            double xn = std::pow(x, n);
            double tn = std::pow(theta, n);
            double denom = xn + tn;
            return r * n * tn * std::pow(x, n - 1.0) / (denom * denom);
        }
        case SigmoidFamily::Algebraic: {
            double q = 1.0 + x * x;
            return 1.0 / (q * std::sqrt(q));
        }
    }
    throw ConfigError("unknown sigmoid family enumerator");
}

// ------------------------------------------------------------
// inverse
// ------------------------------------------------------------

double inverse(const SigmoidSpec& spec, double y) {
    switch (spec.family) {
        case SigmoidFamily::Heaviside:
            throw UnsupportedError("the step family is not invertible");
        case SigmoidFamily::PiecewiseLinear: {
            double beta = getPositive(spec, "beta");
            double xi0 = getParam(spec, "xi0");
            if (y <= 0.0 || y >= 1.0) throwOutsideRange(spec, y);
            return xi0 + y / beta;
        }
        case SigmoidFamily::Logistic: {
            double beta = getPositive(spec, "beta");
            double vT = getParam(spec, "vT");
            if (y <= 0.0 || y >= 1.0) throwOutsideRange(spec, y);
            return vT + std::log(y / (1.0 - y)) / beta;
        }
        case SigmoidFamily::Traub: {
            double alpha = getPositive(spec, "alpha");
            double beta = getParam(spec, "beta");
            if (y <= 0.0 || y >= 1.0) throwOutsideRange(spec, y);
            return beta + alpha * std::log(y / (1.0 - y));
        }
        case SigmoidFamily::Tanh: {
            double F0 = getPositive(spec, "F0");
            double alpha = getPositive(spec, "alpha");
            if (y <= 0.0 || y >= 2.0 * F0) throwOutsideRange(spec, y);
            return std::atanh(y / F0 - 1.0) / alpha;
        }
        case SigmoidFamily::SquareRoot: {
            double F0 = getPositive(spec, "F0");
            double xiT = getParam(spec, "xiT");
            // y = 0 is ambiguous (attained on the whole flat branch).
            if (y <= 0.0) throwOutsideRange(spec, y);
            double q = y / F0;
            return xiT + q * q;
        }
        case SigmoidFamily::NoisyRate: {
            double beta = getPositive(spec, "beta");
            double xiT = getParam(spec, "xiT");
            if (y <= 0.0 || !std::isfinite(y)) throwOutsideRange(spec, y);
            // Strictly increasing, F(xiT) = sqrt(beta); bracket then bisect.
            double target = y;
            double zLo, zHi;
            if (target >= std::sqrt(beta)) {
                zLo = 0.0;
                zHi = std::fmax(target * target, beta);
                int guard = 0;
                while (std::sqrt(noisyRateG(zHi, beta)) < target) {
                    zHi *= 2.0;
                    if (++guard > 200)
                        throw NumericalError("noisy-rate inverse bracket failed to expand");
                }
            } else {
                zHi = 0.0;
                zLo = -beta;
                int guard = 0;
                while (std::sqrt(noisyRateG(zLo, beta)) > target) {
                    zLo *= 2.0;
                    if (++guard > 200)
                        throw NumericalError("noisy-rate inverse bracket failed to expand");
                }
            }
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (zLo + zHi);
                if (mid == zLo || mid == zHi) break;
                double fm = std::sqrt(noisyRateG(mid, beta));
                if (fm < target) zLo = mid; else zHi = mid;
            }
            return xiT + 0.5 * (zLo + zHi);
        }
        case SigmoidFamily::FlexibleShape: {
            double Fm = getPositive(spec, "Fm");
            double kappa = getPositive(spec, "kappa");
            double mu = getParam(spec, "mu");
            double sigma = getPositive(spec, "sigma");
            if (y <= 0.0 || y >= Fm) throwOutsideRange(spec, y);
            // s = log((Fm/(Fm - y))^(1/kappa) - 1), via expm1 to keep
            // precision when the inner power is close to 1.
            double inner = std::expm1(std::log(Fm / (Fm - y)) / kappa);
            if (inner <= 0.0) throwOutsideRange(spec, y);
            double s = std::log(inner);
            return mu + sigma * s / std::sqrt(2.0);
        }
        case SigmoidFamily::NakaRushton: {
            double r = getPositive(spec, "r");
            double theta = getPositive(spec, "theta");
            double n = getPositive(spec, "n");
            if (y <= 0.0 || y >= r) throwOutsideRange(spec, y);
            return theta * std::pow(y / (r - y), 1.0 / n);
        }
        case SigmoidFamily::Algebraic: {
            if (y <= -1.0 || y >= 1.0) throwOutsideRange(spec, y);
            return y / std::sqrt(1.0 - y * y);
        }
    }
    throw ConfigError("unknown sigmoid family enumerator");
}

// ------------------------------------------------------------
// evalJet
// ------------------------------------------------------------

Jet evalJet(const SigmoidSpec& spec, const Jet& x) {
    int order = x.order();
    double x0 = x.value();
    switch (spec.family) {
        case SigmoidFamily::Heaviside:
            return Jet::constant(eval(spec, x0), order);
        case SigmoidFamily::PiecewiseLinear: {
            double beta = getPositive(spec, "beta");
            double xi0 = getParam(spec, "xi0");
            double top = xi0 + 1.0 / beta;
            if (x0 > xi0 && x0 < top) return beta * (x - xi0);
            if (x0 < xi0 || x0 > top) return Jet::constant(eval(spec, x0), order);
            if (order == 0) return Jet::constant(eval(spec, x0), 0);
            throw DomainError("piecewise-linear jet is undefined at a corner");
        }
        case SigmoidFamily::Logistic: {
            double beta = getPositive(spec, "beta");
            double vT = getParam(spec, "vT");
            Jet arg = beta * (x - vT);
            if (std::fabs(arg.value()) > kLogisticSat)
                return Jet::constant(eval(spec, x0), order);
            return 1.0 / (1.0 + jetExp(-arg));
        }
        case SigmoidFamily::Traub: {
            double alpha = getPositive(spec, "alpha");
            double beta = getParam(spec, "beta");
            Jet arg = (x - beta) / alpha;
            if (std::fabs(arg.value()) > kLogisticSat)
                return Jet::constant(eval(spec, x0), order);
            return 1.0 / (1.0 + jetExp(-arg));
        }
        case SigmoidFamily::Tanh: {
            double F0 = getPositive(spec, "F0");
            double alpha = getPositive(spec, "alpha");
            return F0 * (1.0 + jetTanh(alpha * x));
        }
        case SigmoidFamily::SquareRoot: {
            double F0 = getPositive(spec, "F0");
            double xiT = getParam(spec, "xiT");
            if (x0 > xiT) return F0 * jetSqrt(x - xiT);
            if (x0 < xiT) return Jet::constant(0.0, order);
            if (order == 0) return Jet::constant(0.0, 0);
            throw DomainError("square-root jet is undefined at the threshold");
        }
        case SigmoidFamily::NoisyRate: {
            double beta = getPositive(spec, "beta");
            double xiT = getParam(spec, "xiT");
            Jet z = x - xiT;
            double w0 = z.value() / beta;
            if (w0 < -600.0) {
                // Deep left tail: the value underflows and so do all
                // derivatives; a constant jet is exact to 1e-100.
                return Jet::constant(eval(spec, x0), order);
            }
            Jet g = std::fabs(w0) < 0.5 ? beta * psiSeriesJet(z / beta)
                                        : z / (1.0 - jetExp(-z / beta));
            return jetSqrt(g);
        }
        case SigmoidFamily::FlexibleShape: {
            double Fm = getPositive(spec, "Fm");
            double kappa = getPositive(spec, "kappa");
            double mu = getParam(spec, "mu");
            double sigma = getPositive(spec, "sigma");
            Jet s = (std::sqrt(2.0) / sigma) * (x - mu);
            if (s.value() > 690.0) {
                // (1 + e^s)^(-kappa) = e^(-kappa s) up to relative 1e-299.
                return Fm * (1.0 - jetExp(-kappa * s));
            }
            if (s.value() < -690.0) {
                // (1 + e^s)^(-kappa) = 1 - kappa e^s up to O(e^(2s)).
                return Fm * kappa * jetExp(s);
            }
            Jet inner = 1.0 + jetExp(s);
            return Fm * (1.0 - jetExp(-kappa * jetLog(inner)));
        }
        case SigmoidFamily::NakaRushton: {
            double r = getPositive(spec, "r");
            double theta = getPositive(spec, "theta");
            double n = getPositive(spec, "n");
            if (x0 < 0.0) return Jet::constant(0.0, order);
            if (x0 == 0.0) {
                if (order == 0) return Jet::constant(0.0, 0);
                throw DomainError("naka-rushton jet is undefined at zero");
            }
            Jet xn = jetPow(x, n);
            return r * xn / (xn + std::pow(theta, n));
        }
        case SigmoidFamily::Algebraic:
            return x / jetSqrt(1.0 + x * x);
    }
    throw ConfigError("unknown sigmoid family enumerator");
}

// ------------------------------------------------------------
// inverseJet: with x0 = inverse(y0), the order-k coefficient of F(x) is
// F'(x0) x_k plus terms that involve only lower-order coefficients of x, so
// the series inverts by one triangular sweep.
// ------------------------------------------------------------

Jet inverseJet(const SigmoidSpec& spec, const Jet& y) {
    int order = y.order();
    double x0 = inverse(spec, y.value());
    double slope = deriv(spec, x0);
    if (std::fabs(slope) < 1e-300)
        throw SaturationError("sigmoid slope vanishes at the requested preimage");
    Jet x = Jet::constant(x0, order);
    for (int k = 1; k <= order; ++k) {
        Jet g = evalJet(spec, x.truncated(k));
        x.setCoeff(k, (y.coeff(k) - g.coeff(k)) / slope);
    }
    return x;
}

// ------------------------------------------------------------
// Range data
// ------------------------------------------------------------

double sigmoidRangeMin(const SigmoidSpec& spec) {
    switch (spec.family) {
        case SigmoidFamily::Algebraic: return -1.0;
        default: return 0.0;
    }
}

double sigmoidRangeMax(const SigmoidSpec& spec) {
    switch (spec.family) {
        case SigmoidFamily::Heaviside: return getPositive(spec, "F0");
        case SigmoidFamily::PiecewiseLinear: return 1.0;
        case SigmoidFamily::Logistic: return 1.0;
        case SigmoidFamily::Traub: return 1.0;
        case SigmoidFamily::Tanh: return 2.0 * getPositive(spec, "F0");
        case SigmoidFamily::SquareRoot: return kInf;
        case SigmoidFamily::NoisyRate: return kInf;
        case SigmoidFamily::FlexibleShape: return getPositive(spec, "Fm");
        case SigmoidFamily::NakaRushton: return getPositive(spec, "r");
        case SigmoidFamily::Algebraic: return 1.0;
    }
    throw ConfigError("unknown sigmoid family enumerator");
}

bool sigmoidInvertible(const SigmoidSpec& spec) {
    return spec.family != SigmoidFamily::Heaviside;
}

} // namespace flatctl
