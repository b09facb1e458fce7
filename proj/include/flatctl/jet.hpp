#pragma once

// Truncated Taylor-series ("jet") arithmetic.
//
// A Jet holds the coefficients c_k = f^(k)(t0)/k! of a function's Taylor
// expansion at a point, up to a runtime-chosen order (<= kMaxOrder). All
// control-law synthesis in this library obtains derivatives analytically by
// propagating jets through the closed-form expressions, so there is no
// numerical differentiation anywhere in a control path.
//
// Binary operations combine jets at the smaller of the two orders: an order-k
// jet knows nothing beyond its k-th coefficient, so the result cannot either.

#include <array>
#include <cmath>
#include <cstdint>

#include "flatctl/errors.hpp"

namespace flatctl {

class Jet {
public:
    static constexpr int kMaxOrder = 8;

    Jet() = default;

    // Jet of the constant function x(t) = value.
    static Jet constant(double value, int order) {
        Jet j(order);
        j.c_[0] = value;
        return j;
    }

    // Jet of the identity function x(t) = t expanded at t0 = value.
    static Jet variable(double value, int order) {
        Jet j(order);
        j.c_[0] = value;
        if (order >= 1) j.c_[1] = 1.0;
        return j;
    }

    // Jet with explicitly given derivatives d[k] = f^(k)(t0), k = 0..order.
    static Jet fromDerivatives(const double* d, int order) {
        Jet j(order);
        double fact = 1.0;
        for (int k = 0; k <= order; ++k) {
            if (k > 0) fact *= k;
            j.c_[k] = d[k] / fact;
        }
        return j;
    }

    int order() const { return order_; }
    double coeff(int k) const { return k <= order_ ? c_[k] : 0.0; }
    void setCoeff(int k, double v) { c_[static_cast<std::size_t>(k)] = v; }

    double value() const { return c_[0]; }

    // k-th derivative value: k! * c_k.
    double derivative(int k) const {
        if (k > order_) return 0.0;
        double fact = 1.0;
        for (int i = 2; i <= k; ++i) fact *= i;
        return c_[static_cast<std::size_t>(k)] * fact;
    }

    // Jet of the time derivative f'(t): coefficients (k+1)*c_{k+1}, one order lower.
    Jet timeDerivative() const {
        if (order_ == 0) return Jet::constant(0.0, 0);
        Jet r(order_ - 1);
        for (int k = 0; k < order_; ++k) r.c_[k] = (k + 1) * c_[k + 1];
        return r;
    }

    Jet truncated(int order) const {
        Jet r(order < order_ ? order : order_);
        for (int k = 0; k <= r.order_; ++k) r.c_[k] = c_[k];
        return r;
    }

private:
    explicit Jet(int order) : order_(order) {
        if (order < 0 || order > kMaxOrder)
            throw ConfigError("jet order out of range [0, 8]");
    }

    friend Jet operator+(const Jet&, const Jet&);
    friend Jet operator-(const Jet&, const Jet&);
    friend Jet operator*(const Jet&, const Jet&);
    friend Jet operator/(const Jet&, const Jet&);
    friend Jet operator-(const Jet&);
    friend Jet jetExp(const Jet&);
    friend Jet jetLog(const Jet&);
    friend Jet jetSqrt(const Jet&);
    friend void jetSinCos(const Jet&, Jet&, Jet&);
    friend Jet jetAtan2(const Jet&, const Jet&);

    std::array<double, kMaxOrder + 1> c_{};
    int order_ = 0;
};

inline Jet operator+(const Jet& a, const Jet& b) {
    Jet r(a.order_ < b.order_ ? a.order_ : b.order_);
    for (int k = 0; k <= r.order_; ++k) r.c_[k] = a.c_[k] + b.c_[k];
    return r;
}

inline Jet operator-(const Jet& a, const Jet& b) {
    Jet r(a.order_ < b.order_ ? a.order_ : b.order_);
    for (int k = 0; k <= r.order_; ++k) r.c_[k] = a.c_[k] - b.c_[k];
    return r;
}

inline Jet operator-(const Jet& a) {
    Jet r = a;
    for (int k = 0; k <= r.order(); ++k) r.setCoeff(k, -r.coeff(k));
    return r;
}

// Cauchy product, truncated.
inline Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.order_ < b.order_ ? a.order_ : b.order_);
    for (int k = 0; k <= r.order_; ++k) {
        double s = 0.0;
        for (int j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
        r.c_[k] = s;
    }
    return r;
}

// Triangular solve for q = a/b: a_k = sum_{j<=k} q_j b_{k-j}.
inline Jet operator/(const Jet& a, const Jet& b) {
    if (b.c_[0] == 0.0) throw DomainError("jet division by a jet with zero value");
    Jet r(a.order_ < b.order_ ? a.order_ : b.order_);
    for (int k = 0; k <= r.order_; ++k) {
        double s = a.c_[k];
        for (int j = 0; j < k; ++j) s -= r.c_[j] * b.c_[k - j];
        r.c_[k] = s / b.c_[0];
    }
    return r;
}

inline Jet operator+(const Jet& a, double s) {
    Jet r = a;
    r.setCoeff(0, r.coeff(0) + s);
    return r;
}
inline Jet operator+(double s, const Jet& a) { return a + s; }
inline Jet operator-(const Jet& a, double s) { return a + (-s); }
inline Jet operator-(double s, const Jet& a) { return (-a) + s; }

inline Jet operator*(const Jet& a, double s) {
    Jet r = a;
    for (int k = 0; k <= r.order(); ++k) r.setCoeff(k, r.coeff(k) * s);
    return r;
}
inline Jet operator*(double s, const Jet& a) { return a * s; }
inline Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }
inline Jet operator/(double s, const Jet& a) { return Jet::constant(s, a.order()) / a; }

// e = exp(u): k*e_k = sum_{j=1..k} j*u_j*e_{k-j}.
inline Jet jetExp(const Jet& u) {
    Jet r(u.order_);
    r.c_[0] = std::exp(u.c_[0]);
    for (int k = 1; k <= r.order_; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += j * u.c_[j] * r.c_[k - j];
        r.c_[k] = s / k;
    }
    return r;
}

// l = log(u): k*u_0*l_k = k*u_k - sum_{j=1..k-1} j*l_j*u_{k-j}.
inline Jet jetLog(const Jet& u) {
    if (!(u.c_[0] > 0.0)) throw DomainError("jet log of a non-positive value");
    Jet r(u.order_);
    r.c_[0] = std::log(u.c_[0]);
    for (int k = 1; k <= r.order_; ++k) {
        double s = k * u.c_[k];
        for (int j = 1; j < k; ++j) s -= j * r.c_[j] * u.c_[k - j];
        r.c_[k] = s / (k * u.c_[0]);
    }
    return r;
}

// s = sqrt(u): s_k = (u_k - sum_{j=1..k-1} s_j s_{k-j}) / (2 s_0).
inline Jet jetSqrt(const Jet& u) {
    if (!(u.c_[0] > 0.0)) throw DomainError("jet sqrt of a non-positive value");
    Jet r(u.order_);
    r.c_[0] = std::sqrt(u.c_[0]);
    for (int k = 1; k <= r.order_; ++k) {
        double s = u.c_[k];
        for (int j = 1; j < k; ++j) s -= r.c_[j] * r.c_[k - j];
        r.c_[k] = s / (2.0 * r.c_[0]);
    }
    return r;
}

// Simultaneous recurrence: k*s_k = sum j*u_j*c_{k-j}, k*c_k = -sum j*u_j*s_{k-j}.
inline void jetSinCos(const Jet& u, Jet& sinOut, Jet& cosOut) {
    Jet s(u.order_), c(u.order_);
    s.c_[0] = std::sin(u.c_[0]);
    c.c_[0] = std::cos(u.c_[0]);
    for (int k = 1; k <= u.order_; ++k) {
        double as = 0.0, ac = 0.0;
        for (int j = 1; j <= k; ++j) {
            as += j * u.c_[j] * c.c_[k - j];
            ac += j * u.c_[j] * s.c_[k - j];
        }
        s.c_[k] = as / k;
        c.c_[k] = -ac / k;
    }
    sinOut = s;
    cosOut = c;
}

inline Jet jetSin(const Jet& u) {
    Jet s, c;
    jetSinCos(u, s, c);
    return s;
}

inline Jet jetCos(const Jet& u) {
    Jet s, c;
    jetSinCos(u, s, c);
    return c;
}

// tanh via exp(2u); constant +-1 when saturated beyond double precision.
inline Jet jetTanh(const Jet& u) {
    if (u.value() > 19.1) return Jet::constant(1.0, u.order());
    if (u.value() < -19.1) return Jet::constant(-1.0, u.order());
    Jet e2 = jetExp(u * 2.0);
    return 1.0 - 2.0 / (e2 + 1.0);
}

// Integer power by repeated multiplication (n small in practice).
inline Jet jetPowInt(const Jet& u, int n) {
    if (n < 0) return 1.0 / jetPowInt(u, -n);
    Jet r = Jet::constant(1.0, u.order());
    Jet base = u;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

// Real power via exp(p*log(u)); requires u > 0.
inline Jet jetPow(const Jet& u, double p) { return jetExp(jetLog(u) * p); }

// theta = atan2(y, x) as a jet: theta_0 from the two-argument arctangent,
// higher coefficients by integrating theta' = (y'x - x'y)/(x^2 + y^2).
inline Jet jetAtan2(const Jet& y, const Jet& x) {
    int n = x.order_ < y.order_ ? x.order_ : y.order_;
    Jet r(n);
    r.c_[0] = std::atan2(y.c_[0], x.c_[0]);
    if (n == 0) return r;
    Jet q = (y.timeDerivative() * x - x.timeDerivative() * y) / (x * x + y * y);
    for (int k = 1; k <= n; ++k) r.c_[k] = q.coeff(k - 1) / k;
    return r;
}

} // namespace flatctl
