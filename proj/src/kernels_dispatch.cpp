#include "lprx/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace lprx::kernels {

double (*dot)(const double*, const double*, std::size_t) = nullptr;
double (*sq_norm)(const double*, std::size_t) = nullptr;
double (*max_abs)(const double*, std::size_t) = nullptr;
double (*max_abs_diff)(const double*, const double*, std::size_t) = nullptr;
void (*axpy)(double*, double, const double*, std::size_t) = nullptr;
void (*scal)(double*, double, std::size_t) = nullptr;
void (*combine)(double*, double, const double*, double, const double*, std::size_t) = nullptr;
void (*clamp_sum)(double*, const double*, const double*, const double*, const double*,
                  std::size_t) = nullptr;
void (*dual_update)(double*, const double*, const double*, std::size_t) = nullptr;

namespace {

const char* g_backend = "scalar";

void use_scalar() {
    dot = &scalar::dot;
    sq_norm = &scalar::sq_norm;
    max_abs = &scalar::max_abs;
    max_abs_diff = &scalar::max_abs_diff;
    axpy = &scalar::axpy;
    scal = &scalar::scal;
    combine = &scalar::combine;
    clamp_sum = &scalar::clamp_sum;
    dual_update = &scalar::dual_update;
    g_backend = "scalar";
}

#if defined(LPRX_HAVE_AVX2_BACKEND)
void use_avx2() {
    dot = &avx2::dot;
    sq_norm = &avx2::sq_norm;
    max_abs = &avx2::max_abs;
    max_abs_diff = &avx2::max_abs_diff;
    axpy = &avx2::axpy;
    scal = &avx2::scal;
    combine = &avx2::combine;
    clamp_sum = &avx2::clamp_sum;
    dual_update = &avx2::dual_update;
    g_backend = "avx2";
}

bool cpu_has_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

struct Dispatcher {
    Dispatcher() {
        use_scalar();
#if defined(LPRX_HAVE_AVX2_BACKEND)
        const char* forced = std::getenv("LPRX_KERNELS");
        if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return;
        if (cpu_has_avx2()) use_avx2();
#endif
    }
};

const Dispatcher g_dispatcher;

}  // namespace

std::string_view active_backend() { return g_backend; }

}  // namespace lprx::kernels
