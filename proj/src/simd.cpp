#include "flatctl/simd.hpp"

#include <cmath>
#include <stdexcept>

namespace flatctl::simd {

namespace detail {

double dotScalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sumScalar(const double* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i];
    return s;
}

double maxAbsScalar(const double* a, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i]));
    return m;
}

} // namespace detail

bool hasAvx2() {
#if defined(__x86_64__)
    static const bool ok = __builtin_cpu_supports("avx2");
    return ok;
#else
    return false;
#endif
}

double dot(const double* a, const double* b, std::size_t n) {
#if defined(__x86_64__)
    if (hasAvx2()) return detail::dotAvx2(a, b, n);
#endif
    return detail::dotScalar(a, b, n);
}

double sum(const double* a, std::size_t n) {
#if defined(__x86_64__)
    if (hasAvx2()) return detail::sumAvx2(a, n);
#endif
    return detail::sumScalar(a, n);
}

double maxAbs(const double* a, std::size_t n) {
#if defined(__x86_64__)
    if (hasAvx2()) return detail::maxAbsAvx2(a, n);
#endif
    return detail::maxAbsScalar(a, n);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    return dot(a.data(), b.data(), a.size());
}

double sum(const std::vector<double>& a) { return sum(a.data(), a.size()); }

double maxAbs(const std::vector<double>& a) { return maxAbs(a.data(), a.size()); }

} // namespace flatctl::simd
