#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sscp/quadrature.hpp"

using namespace sscp;

TEST_CASE("polynomials are exact") {
    auto f = [](double x) { return 3.0 * x * x * x - x + 2.0; };
    const QuadResult r = integrate_adaptive(f, -1.0, 2.0, 1e-12, 10'000);
    // antiderivative 3/4 x^4 - x^2/2 + 2x over [-1, 2]
    const double exact = (0.75 * 16 - 2.0 + 4.0) - (0.75 - 0.5 - 2.0);
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-14));
    CHECK(r.converged);
}

TEST_CASE("oscillatory integrand meets the requested tolerance") {
    auto f = [](double x) { return std::sin(10.0 * x) * std::exp(-x); };
    const QuadResult r = integrate_adaptive(f, 0.0, 8.0, 1e-10, 100'000);
    // closed form of int sin(kx)e^-x: k/(1+k^2) - e^-X (sin(kX) + k cos(kX))/(1+k^2)
    const double k = 10.0, X = 8.0;
    const double exact = (k - std::exp(-X) * (std::sin(k * X) + k * std::cos(k * X))) / (1 + k * k);
    CHECK(std::abs(r.value - exact) < 1e-10);
}

TEST_CASE("semi-infinite map reproduces gamma moments") {
    // int_0^inf x e^-x dx = 1, int_2^inf e^-(x-2) dx = 1
    auto f1 = [](double x) { return x * std::exp(-x); };
    CHECK(integrate_semi_infinite(f1, 0.0, 1.0, 1e-10, 100'000).value ==
          doctest::Approx(1.0).epsilon(1e-10));
    auto f2 = [](double x) { return std::exp(-(x - 2.0)); };
    CHECK(integrate_semi_infinite(f2, 2.0, 1.0, 1e-10, 100'000).value ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("empty interval integrates to zero") {
    auto f = [](double) { return 1.0; };
    const QuadResult r = integrate_adaptive(f, 2.0, 2.0, 1e-10, 1000);
    CHECK(r.value == 0.0);
    CHECK(r.converged);
}

TEST_CASE("halving the tolerance moves the value less than the old bound") {
    auto f = [](double x) { return std::exp(-x * x) * std::cos(3.0 * x); };
    double tol = 1e-4;
    QuadResult prev = integrate_adaptive(f, 0.0, 6.0, tol, 1'000'000);
    for (int i = 0; i < 6; ++i) {
        tol *= 0.5;
        const QuadResult next = integrate_adaptive(f, 0.0, 6.0, tol, 1'000'000);
        CHECK(std::abs(next.value - prev.value) <= prev.error + 1e-15);
        prev = next;
    }
}

TEST_CASE("budget exhaustion reports an unconverged result") {
    auto f = [](double x) { return std::sin(200.0 * x); };
    const QuadResult r = integrate_adaptive(f, 0.0, 50.0, 1e-14, 100);
    CHECK_FALSE(r.converged);
    CHECK(r.evals <= 100);
}
