#include "impact/kernels.hpp"

#include <cmath>

namespace impact::kernels {

namespace scalar {

void axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void scale(double* x, std::size_t n, double c) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= c;
}

double sum(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double sum_sq(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
    return acc;
}

double abs_sum(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::fabs(x[i]);
    return acc;
}

double abs_max(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double a = std::fabs(x[i]);
        if (a > m) m = a;
    }
    return m;
}

} // namespace scalar

#ifdef IMPACT_HAVE_AVX2
namespace avx2 {
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void scale(double* x, std::size_t n, double c);
double sum(const double* x, std::size_t n);
double sum_sq(const double* x, std::size_t n);
double abs_sum(const double* x, std::size_t n);
double abs_max(const double* x, std::size_t n);
}

static bool use_avx2() {
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok;
}
#endif

void axpy(double a, const double* x, double* y, std::size_t n) {
#ifdef IMPACT_HAVE_AVX2
    if (use_avx2()) return avx2::axpy(a, x, y, n);
#endif
    scalar::axpy(a, x, y, n);
}

double dot(const double* x, const double* y, std::size_t n) {
#ifdef IMPACT_HAVE_AVX2
    if (use_avx2()) return avx2::dot(x, y, n);
#endif
    return scalar::dot(x, y, n);
}

void scale(double* x, std::size_t n, double c) {
#ifdef IMPACT_HAVE_AVX2
    if (use_avx2()) return avx2::scale(x, n, c);
#endif
    scalar::scale(x, n, c);
}

double sum(const double* x, std::size_t n) {
#ifdef IMPACT_HAVE_AVX2
    if (use_avx2()) return avx2::sum(x, n);
#endif
    return scalar::sum(x, n);
}

double sum_sq(const double* x, std::size_t n) {
#ifdef IMPACT_HAVE_AVX2
    if (use_avx2()) return avx2::sum_sq(x, n);
#endif
    return scalar::sum_sq(x, n);
}

double abs_sum(const double* x, std::size_t n) {
#ifdef IMPACT_HAVE_AVX2
    if (use_avx2()) return avx2::abs_sum(x, n);
#endif
    return scalar::abs_sum(x, n);
}

double abs_max(const double* x, std::size_t n) {
#ifdef IMPACT_HAVE_AVX2
    if (use_avx2()) return avx2::abs_max(x, n);
#endif
    return scalar::abs_max(x, n);
}

const char* backend() {
#ifdef IMPACT_HAVE_AVX2
    if (use_avx2()) return "avx2";
#endif
    return "scalar";
}

} // namespace impact::kernels
