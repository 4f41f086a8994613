#include "lprx/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace lprx::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sq_norm(const double* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
    return s;
}

double max_abs(const double* a, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i]));
    return m;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

void axpy(double* y, double a, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal(double* x, double a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void combine(double* dst, double a, const double* x, double b, const double* z, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a * x[i] + b * z[i];
}

void clamp_sum(double* dst, const double* a, const double* b, const double* lo, const double* hi,
               std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double v = a[i] + b[i];
        dst[i] = std::min(std::max(v, lo[i]), hi[i]);
    }
}

void dual_update(double* u, const double* xr, const double* z, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) u[i] += xr[i] - z[i];
}

}  // namespace lprx::kernels::scalar
