#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "sscp/channel.hpp"
#include "sscp/montecarlo.hpp"

using namespace sscp;

TEST_CASE("philox known-answer, zero input") {
    const auto out = Philox4x32::block({0, 0, 0, 0}, {0, 0});
    CHECK(out[0] == 0x6627e8d5u);
    CHECK(out[1] == 0xe169c58du);
    CHECK(out[2] == 0xbc57ac4cu);
    CHECK(out[3] == 0x9b00dbd8u);
}

TEST_CASE("philox known-answer, all-ones input") {
    const auto out = Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                       {0xffffffffu, 0xffffffffu});
    CHECK(out[0] == 0x408f276du);
    CHECK(out[1] == 0x41c83b0eu);
    CHECK(out[2] == 0xa20bc7c6u);
    CHECK(out[3] == 0x6d5451fdu);
}

TEST_CASE("uniform stream stays inside the open interval and looks uniform") {
    PhiloxStream rng(5);
    double sum = 0.0, sum2 = 0.0;
    const int n = 200'000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.next_u01();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
        sum += u;
        sum2 += u * u;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean - 0.5) < 4.0 / std::sqrt(12.0 * n));
    CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.02));
}

TEST_CASE("substreams differ, identical parameters repeat") {
    PhiloxStream a(11, 0), b(11, 1), c(11, 0);
    bool any_diff = false;
    for (int i = 0; i < 100; ++i) {
        const double ua = a.next_u01();
        if (ua != b.next_u01()) any_diff = true;
        CHECK(ua == c.next_u01());
    }
    CHECK(any_diff);
}

TEST_CASE("single trial estimate is degenerate") {
    McConfig mc;
    mc.trials = 1;
    mc.seed = 3;
    const SscpEstimate e = estimate_sscp(ScenarioConfig{}, mc);
    CHECK((e.value == 0.0 || e.value == 1.0));
    CHECK(e.std_err == 0.0);
    CHECK(e.trials == 1);
}

TEST_CASE("estimate is invariant to worker count and repeatable") {
    ScenarioConfig cfg;
    cfg.far_count = cfg.near_count = 2;
    McConfig mc;
    mc.trials = 100'000;
    mc.seed = 77;
    mc.batch = 4096;

    mc.workers = 1;
    const SscpEstimate one = estimate_sscp(cfg, mc);
    mc.workers = 2;
    const SscpEstimate two = estimate_sscp(cfg, mc);
    mc.workers = 4;
    const SscpEstimate four = estimate_sscp(cfg, mc);
    CHECK(one.value == two.value);
    CHECK(one.value == four.value);
    CHECK(one.std_err == two.std_err);

    const SscpEstimate again = estimate_sscp(cfg, mc);
    CHECK(again.value == one.value);
}

TEST_CASE("starved devices essentially never succeed") {
    ScenarioConfig cfg;
    cfg.gamma_u_db = -60.0;
    McConfig mc;
    mc.trials = 10'000;
    mc.seed = 9;
    const SscpEstimate e = estimate_sscp(cfg, mc);
    CHECK(e.value <= 0.001);
}

TEST_CASE("slack constraints essentially always succeed") {
    ScenarioConfig cfg;
    cfg.omega = {0, 0, 0, 0};
    cfg.nu1 = 0.0;
    cfg.gamma_u_db = 60.0;
    cfg.gamma_e_db = -60.0;
    cfg.task_bits = 1e-6;
    McConfig mc;
    mc.trials = 10'000;
    mc.seed = 10;
    const SscpEstimate e = estimate_sscp(cfg, mc);
    CHECK(e.value >= 0.999);
}

TEST_CASE("selected far gain follows the best-of-K distribution") {
    ScenarioConfig cfg;
    cfg.far_count = 3;
    const SimContext ctx = make_sim_context(cfg);
    PhiloxStream rng(31, 0);
    const int n = 1'000'000;
    std::vector<double> a(n);
    for (auto& v : a) v = draw_channels(ctx, rng).a;
    std::sort(a.begin(), a.end());
    const FadingSpec spec{cfg.m, cfg.xi.fu};
    double ks = 0.0;
    for (int i = 0; i < n; i += 89) {
        const double model = orderstat_cdf(a[i], cfg.far_count, spec);
        ks = std::max(ks, std::abs(model - static_cast<double>(i) / n));
        ks = std::max(ks, std::abs(model - static_cast<double>(i + 1) / n));
    }
    CHECK(ks < 0.005);
}

TEST_CASE("success rate rises with transmit SNR") {
    ScenarioConfig cfg;
    McConfig mc;
    mc.trials = 100'000;
    mc.seed = 5;
    double prev = -1.0, prev_se = 0.0;
    for (double g : {10.0, 20.0, 30.0}) {
        cfg.gamma_u_db = g;
        const SscpEstimate e = estimate_sscp(cfg, mc);
        if (prev >= 0.0) {
            const double pooled = std::sqrt(prev_se * prev_se + e.std_err * e.std_err);
            CHECK(e.value >= prev - 4.0 * pooled);
        }
        prev = e.value;
        prev_se = e.std_err;
    }
}

TEST_CASE("every simulated trial satisfies the event-form equivalence") {
    ScenarioConfig cfg;
    const SimContext ctx = make_sim_context(cfg);
    PhiloxStream rng(123, 1);
    for (int i = 0; i < 20'000; ++i) {
        const SecrecySnapshot snap = simulate_once(ctx, rng);
        CHECK(snap.success == success_threshold_form(snap.sinr, ctx.derived.thr));
    }
}
