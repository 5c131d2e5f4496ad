#pragma once
// Dense double-precision primitives used by the generator, DSP and network code.
// Each operation has a scalar reference implementation and, on x86-64, an AVX2
// variant picked once at startup. kernels::backend() reports which one is live.

#include <cstddef>

namespace impact::kernels {

// y[i] += a * x[i]
void axpy(double a, const double* x, double* y, std::size_t n);
// sum x[i] * y[i]
double dot(const double* x, const double* y, std::size_t n);
// x[i] *= c
void scale(double* x, std::size_t n, double c);
double sum(const double* x, std::size_t n);
double sum_sq(const double* x, std::size_t n);
double abs_sum(const double* x, std::size_t n);
double abs_max(const double* x, std::size_t n);

// "avx2" or "scalar"
const char* backend();

namespace scalar {
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void scale(double* x, std::size_t n, double c);
double sum(const double* x, std::size_t n);
double sum_sq(const double* x, std::size_t n);
double abs_sum(const double* x, std::size_t n);
double abs_max(const double* x, std::size_t n);
}

} // namespace impact::kernels
