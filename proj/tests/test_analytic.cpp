#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sscp/analytic.hpp"
#include "sscp/montecarlo.hpp"
#include "sscp/quadrature.hpp"

using namespace sscp;

namespace {
ScenarioConfig fast_orders(ScenarioConfig cfg, int orders = 300) {
    cfg.quad_n = cfg.quad_o = orders;
    return cfg;
}
} // namespace

TEST_CASE("grid nodes, single-node cases") {
    const QuadratureGrid g1 = chebyshev_grid(1, GridMapping::Lemma1Outer);
    CHECK(g1.phi[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(g1.omega[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(g1.wp[0] == doctest::Approx(1.4426950408889634).epsilon(1e-12));

    const QuadratureGrid g2 = chebyshev_grid(1, GridMapping::Lemma2Outer, 0.0);
    CHECK(g2.omega[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(g2.wp[0] == doctest::Approx(0.6931471805599453).epsilon(1e-12));
}

TEST_CASE("grid nodes are ordered and finite") {
    const QuadratureGrid g = chebyshev_grid(64, GridMapping::Lemma1Outer);
    for (int i = 1; i < 64; ++i) {
        CHECK(g.phi[i] < g.phi[i - 1]);
        CHECK(std::isfinite(g.wp[i]));
        CHECK(std::isfinite(g.omega[i]));
    }
}

TEST_CASE("inner grid rejects inverted limits") {
    CHECK_THROWS_AS(chebyshev_grid(8, GridMapping::Lemma1Inner, 2.0, 1.0), ConfigError);
}

TEST_CASE("dispatch picks the matching closed form") {
    ScenarioConfig cfg = fast_orders({}, 100);
    cfg.nu1 = 0.4;
    CHECK(sscp_analytic(cfg).method == Method::Lemma1);
    cfg.nu1 = 0.0;
    CHECK(sscp_analytic(cfg).method == Method::Lemma2);
}

TEST_CASE("route preconditions are enforced") {
    ScenarioConfig cfg = fast_orders({}, 50);
    cfg.m = 1;
    CHECK_THROWS_AS(sscp_isic(cfg), ConfigError);
    cfg.m = 2;
    cfg.nu1 = 0.0;
    CHECK_THROWS_AS(sscp_isic(cfg), ConfigError);
    cfg.nu1 = 0.4;
    CHECK_THROWS_AS(sscp_psic(cfg), ConfigError);
}

TEST_CASE("zero task length is a certain event") {
    ScenarioConfig cfg = fast_orders({}, 50);
    cfg.task_bits = 0.0;
    CHECK(sscp_analytic(cfg).value == 1.0);
    cfg.nu1 = 0.0;
    CHECK(sscp_analytic(cfg).value == 1.0);
}

TEST_CASE("infeasible deadline evaluates to nothing") {
    ScenarioConfig cfg = fast_orders({}, 400);
    cfg.task_bits = 1e8; // c_off scaled by 1e6
    cfg.f_mec = 1e14;    // keeps the compute phase inside the window
    CHECK(std::abs(sscp_isic(cfg).value) <= 1e-3);
    cfg.nu1 = 0.0;
    CHECK(std::abs(sscp_psic(cfg).value) <= 1e-3);
}

TEST_CASE("starved harvest evaluates to nothing") {
    ScenarioConfig cfg = fast_orders({}, 400);
    cfg.nu1 = 0.0;
    cfg.gamma_u_db = -60.0;
    CHECK(std::abs(sscp_psic(cfg).value) <= 1e-3);
}

TEST_CASE("delta block equals the symbolic truncated integral") {
    // deg = 1 (the m = 2 case): int_0^X y e^-ly dy = (1 - e^-lX (1 + lX)) / l^2
    for (double rate : {0.5, 2.0, 7.0})
        for (double upper : {0.1, 1.0, 10.0}) {
            const double sym = (1.0 - std::exp(-rate * upper) * (1.0 + rate * upper)) /
                               (rate * rate);
            CHECK(detail::gamma_tail_integral(1, rate, upper) ==
                  doctest::Approx(sym).epsilon(1e-12));
        }
    // higher degrees against direct quadrature
    for (int deg : {2, 3}) {
        const double rate = 1.7, upper = 3.3;
        auto f = [&](double y) { return std::pow(y, deg) * std::exp(-rate * y); };
        const QuadResult q = integrate_adaptive(f, 0.0, upper, 1e-12, 100'000);
        CHECK(detail::gamma_tail_integral(deg, rate, upper) ==
              doctest::Approx(q.value).epsilon(1e-10));
    }
}

TEST_CASE("residual-SIC route agrees with Monte Carlo at the baseline point") {
    const ScenarioConfig cfg = fast_orders({}, 400);
    const SscpEstimate ana = sscp_isic(cfg);
    McConfig mc;
    mc.trials = 400'000;
    mc.seed = 51;
    const SscpEstimate sim = estimate_sscp(cfg, mc);
    CHECK(std::abs(ana.value - sim.value) <= 3.0 * sim.std_err + 0.005);
}

TEST_CASE("perfect-SIC route agrees with Monte Carlo, impairment-free") {
    ScenarioConfig cfg = fast_orders({}, 400);
    cfg.far_count = cfg.near_count = 5;
    cfg.nu1 = 0.0;
    cfg.omega = {0, 0, 0, 0};
    const SscpEstimate ana = sscp_psic(cfg);
    McConfig mc;
    mc.trials = 400'000;
    mc.seed = 52;
    const SscpEstimate sim = estimate_sscp(cfg, mc);
    CHECK(std::abs(ana.value - sim.value) <= 3.0 * sim.std_err + 0.005);
}

TEST_CASE("m = 3 closed form agrees with Monte Carlo") {
    ScenarioConfig cfg = fast_orders({}, 400);
    cfg.m = 3;
    const SscpEstimate ana = sscp_isic(cfg);
    McConfig mc;
    mc.trials = 400'000;
    mc.seed = 53;
    const SscpEstimate sim = estimate_sscp(cfg, mc);
    CHECK(std::abs(ana.value - sim.value) <= 3.0 * sim.std_err + 0.005);
}

TEST_CASE("the default and the specified inner transforms evaluate the same integral") {
    ScenarioConfig cfg = fast_orders({}, 1000);
    const double with_exp = sscp_isic(cfg).value;
    cfg.lemma1_inner_map = Lemma1InnerMap::AsPrinted;
    const double as_printed = sscp_isic(cfg).value;
    CHECK(std::abs(with_exp - as_printed) < 5e-4);
}

TEST_CASE("vanishing residual interference approaches the perfect-SIC value") {
    ScenarioConfig cfg = fast_orders({}, 300);
    cfg.far_count = cfg.near_count = 5;
    cfg.nu1 = 1e-4;
    const double isic = sscp_isic(cfg).value;
    cfg.nu1 = 0.0;
    const double psic = sscp_psic(cfg).value;
    CHECK(std::abs(isic - psic) <= 0.01);
}

TEST_CASE("closed form rises with transmit SNR") {
    ScenarioConfig cfg = fast_orders({}, 300);
    double prev = -1.0;
    for (double g : {10.0, 20.0, 30.0, 40.0}) {
        cfg.gamma_u_db = g;
        const double v = sscp_analytic(cfg).value;
        CHECK(v >= prev - 1e-9);
        prev = v;
    }
}

TEST_CASE("raw output stays within epsilon of the probability range") {
    for (double g : {0.0, 20.0, 40.0}) {
        ScenarioConfig cfg = fast_orders({}, 1000);
        cfg.gamma_u_db = g;
        const double v = sscp_isic(cfg).value;
        CHECK(v >= -1e-3);
        CHECK(v <= 1.0 + 1e-3);
        CHECK(sscp_isic(cfg).clamped() >= 0.0);
        CHECK(sscp_isic(cfg).clamped() <= 1.0);
    }
}
