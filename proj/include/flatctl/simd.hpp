#pragma once

// Small vector kernels with a scalar reference implementation and an AVX2
// variant selected once at runtime. Results may differ from the scalar path
// in the last bits (fused multiply-add, different accumulation order); the
// equivalence tests pin the allowed drift.

#include <cstddef>
#include <vector>

namespace flatctl::simd {

// True when the running CPU supports AVX2 and the build carries the kernels.
bool hasAvx2();

double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double maxAbs(const double* a, std::size_t n);

double dot(const std::vector<double>& a, const std::vector<double>& b);
double sum(const std::vector<double>& a);
double maxAbs(const std::vector<double>& a);

namespace detail {

double dotScalar(const double* a, const double* b, std::size_t n);
double sumScalar(const double* a, std::size_t n);
double maxAbsScalar(const double* a, std::size_t n);

#if defined(__x86_64__)
double dotAvx2(const double* a, const double* b, std::size_t n);
double sumAvx2(const double* a, std::size_t n);
double maxAbsAvx2(const double* a, std::size_t n);
#endif

} // namespace detail

} // namespace flatctl::simd
