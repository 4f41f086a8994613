#include <doctest.h>

#include <cmath>
#include <vector>

#include "lprx/kernels.hpp"
#include "lprx/lcs.hpp"
#include "lprx/rng.hpp"

using namespace lprx;

namespace {

std::vector<double> random_vector(Rng& rng, std::size_t n, double scale = 1.0) {
    std::vector<double> v(n);
    for (auto& x : v) x = scale * (2.0 * rng.uniform01() - 1.0);
    return v;
}

}  // namespace

TEST_CASE("dispatch selects a real backend") {
    const auto backend = kernels::active_backend();
    CHECK((backend == "scalar" || backend == "avx2"));
    if (backend == "scalar") {
        CHECK(kernels::dot == &kernels::scalar::dot);
    }
#if defined(LPRX_HAVE_AVX2_BACKEND)
    if (backend == "avx2") {
        CHECK(kernels::dot == &kernels::avx2::dot);
    }
#endif
}

#if defined(LPRX_HAVE_AVX2_BACKEND)
TEST_CASE("scalar and avx2 backends agree") {
    if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) return;
    Rng rng(42);
    for (std::size_t n : {0UL, 1UL, 3UL, 4UL, 7UL, 8UL, 17UL, 64UL, 1000UL, 4097UL}) {
        auto a = random_vector(rng, n, 3.0);
        auto b = random_vector(rng, n, 2.0);
        const double tol = 1e-12 * (1.0 + static_cast<double>(n));

        CHECK(kernels::scalar::dot(a.data(), b.data(), n) ==
              doctest::Approx(kernels::avx2::dot(a.data(), b.data(), n)).epsilon(tol));
        CHECK(kernels::scalar::sq_norm(a.data(), n) ==
              doctest::Approx(kernels::avx2::sq_norm(a.data(), n)).epsilon(tol));
        CHECK(kernels::scalar::max_abs(a.data(), n) ==
              doctest::Approx(kernels::avx2::max_abs(a.data(), n)));
        CHECK(kernels::scalar::max_abs_diff(a.data(), b.data(), n) ==
              doctest::Approx(kernels::avx2::max_abs_diff(a.data(), b.data(), n)));

        auto y1 = a, y2 = a;
        kernels::scalar::axpy(y1.data(), 0.7, b.data(), n);
        kernels::avx2::axpy(y2.data(), 0.7, b.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-14));

        std::vector<double> d1(n), d2(n);
        kernels::scalar::combine(d1.data(), 1.6, a.data(), -0.6, b.data(), n);
        kernels::avx2::combine(d2.data(), 1.6, a.data(), -0.6, b.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(d1[i] == doctest::Approx(d2[i]).epsilon(1e-14));

        std::vector<double> lo(n, -0.5), hi(n, 0.5);
        if (n > 2) {
            lo[1] = -kInf;
            hi[1] = kInf;
        }
        kernels::scalar::clamp_sum(d1.data(), a.data(), b.data(), lo.data(), hi.data(), n);
        kernels::avx2::clamp_sum(d2.data(), a.data(), b.data(), lo.data(), hi.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(d1[i] == d2[i]);

        auto u1 = b, u2 = b;
        kernels::scalar::dual_update(u1.data(), a.data(), d1.data(), n);
        kernels::avx2::dual_update(u2.data(), a.data(), d2.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(u1[i] == doctest::Approx(u2[i]).epsilon(1e-14));
    }
}
#endif

TEST_CASE("clamp_sum honors infinite bounds") {
    std::vector<double> a{10.0, -10.0}, b{0.0, 0.0};
    std::vector<double> lo{0.0, -kInf}, hi{1.0, kInf};
    std::vector<double> out(2);
    kernels::clamp_sum(out.data(), a.data(), b.data(), lo.data(), hi.data(), 2);
    CHECK(out[0] == 1.0);
    CHECK(out[1] == -10.0);
}
