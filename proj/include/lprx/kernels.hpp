#pragma once

#include <cstddef>
#include <string_view>

namespace lprx::kernels {

// Double-precision vector primitives that sit on the hot path of the ADMM
// solver (triangular solves, residual norms, projection steps) and of the
// Monte Carlo aggregation. `scalar` is the reference implementation; `avx2`
// is an intrinsics variant selected at runtime when the CPU reports
// AVX2+FMA support. The two backends agree up to floating-point
// reassociation and are equivalence-tested against each other.
//
// Set LPRX_KERNELS=scalar (or =avx2) in the environment to force a backend.

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double sq_norm(const double* a, std::size_t n);
double max_abs(const double* a, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);
void axpy(double* y, double a, const double* x, std::size_t n);
void scal(double* x, double a, std::size_t n);
// dst = a*x + b*z
void combine(double* dst, double a, const double* x, double b, const double* z, std::size_t n);
// dst[i] = clamp(a[i] + b[i], lo[i], hi[i])
void clamp_sum(double* dst, const double* a, const double* b, const double* lo, const double* hi,
               std::size_t n);
// u += xr - z
void dual_update(double* u, const double* xr, const double* z, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define LPRX_HAVE_AVX2_BACKEND 1
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double sq_norm(const double* a, std::size_t n);
double max_abs(const double* a, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);
void axpy(double* y, double a, const double* x, std::size_t n);
void scal(double* x, double a, std::size_t n);
void combine(double* dst, double a, const double* x, double b, const double* z, std::size_t n);
void clamp_sum(double* dst, const double* a, const double* b, const double* lo, const double* hi,
               std::size_t n);
void dual_update(double* u, const double* xr, const double* z, std::size_t n);
}  // namespace avx2
#endif

// Dispatched entry points. Valid after static initialization.
extern double (*dot)(const double*, const double*, std::size_t);
extern double (*sq_norm)(const double*, std::size_t);
extern double (*max_abs)(const double*, std::size_t);
extern double (*max_abs_diff)(const double*, const double*, std::size_t);
extern void (*axpy)(double*, double, const double*, std::size_t);
extern void (*scal)(double*, double, std::size_t);
extern void (*combine)(double*, double, const double*, double, const double*, std::size_t);
extern void (*clamp_sum)(double*, const double*, const double*, const double*, const double*,
                         std::size_t);
extern void (*dual_update)(double*, const double*, const double*, std::size_t);

// Name of the backend the dispatcher picked ("scalar" or "avx2").
std::string_view active_backend();

}  // namespace lprx::kernels
