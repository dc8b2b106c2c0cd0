#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "sscp/sysmodel.hpp"

using namespace sscp;

TEST_CASE("baseline parameter set validates") {
    ScenarioConfig cfg; // defaults carry the baseline study values
    CHECK_NOTHROW(validate_config(cfg));
    CHECK(cfg.eta == 0.7);
    CHECK(cfg.T == 1.0);
    CHECK(cfg.task_bits == 100.0);
    CHECK(cfg.f_mec == 1e8);
}

TEST_CASE("eta at the interval boundary is rejected") {
    ScenarioConfig cfg;
    cfg.eta = 1.0;
    CHECK_THROWS_WITH_AS(validate_config(cfg), doctest::Contains("eta"), ConfigError);
    try {
        validate_config(cfg);
    } catch (const ConfigError& e) {
        CHECK(e.code() == "eh-ratio-out-of-range");
    }
}

TEST_CASE("vanishing offload window is rejected") {
    ScenarioConfig cfg;
    cfg.eta = 0.99999; // (1-eta)*T barely above zero, t_com pushes it under
    try {
        validate_config(cfg);
        FAIL("expected nonpositive-offload-window");
    } catch (const ConfigError& e) {
        CHECK(e.code() == "nonpositive-offload-window");
    }
}

TEST_CASE("db conversion") {
    CHECK(db_to_linear(0.0) == 1.0);
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(db_to_linear(30.0) == doctest::Approx(1000.0).epsilon(1e-14));
}

TEST_CASE("db conversion is multiplicative over addition") {
    const double values[] = {-27.5, -3.0, 0.0, 4.2, 11.0, 36.9};
    for (double a : values)
        for (double b : values)
            CHECK(db_to_linear(a + b) ==
                  doctest::Approx(db_to_linear(a) * db_to_linear(b)).epsilon(1e-12));
}

TEST_CASE("phase timing at the baseline point") {
    ScenarioConfig cfg;
    const PhaseTiming t = phase_timing(cfg);
    // (50 + 50) bits * 100 cycles / 1e8 Hz
    CHECK(t.t_com == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(t.t_wpt == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(t.t_th == doctest::Approx(0.2999).epsilon(1e-12));
    CHECK(t.t_down == 0.0);
}

TEST_CASE("zero cycles per bit gives a free compute phase") {
    ScenarioConfig cfg;
    cfg.cycles_per_bit = 0.0;
    const PhaseTiming t = phase_timing(cfg);
    CHECK(t.t_com == 0.0);
    CHECK(t.t_th == doctest::Approx((1.0 - cfg.eta) * cfg.T));
}

TEST_CASE("phase budget always sums to the period") {
    ScenarioConfig cfg;
    for (double eta : {0.1, 0.25, 0.5, 0.7, 0.9}) {
        cfg.eta = eta;
        const PhaseTiming t = phase_timing(cfg);
        CHECK(t.t_wpt + t.t_th + t.t_com + t.t_down == doctest::Approx(cfg.T).epsilon(1e-14));
    }
}

TEST_CASE("validation is idempotent") {
    ScenarioConfig cfg;
    cfg.gamma_u_db = 17.5;
    cfg.far_count = 3;
    const ScenarioConfig once = validate_config(cfg);
    const ScenarioConfig twice = validate_config(once);
    CHECK(once.gamma_u_db == twice.gamma_u_db);
    CHECK(once.far_count == twice.far_count);
    CHECK(once.eta == twice.eta);
}

TEST_CASE("power split invariants") {
    ScenarioConfig cfg;
    cfg.rho_fu = 0.4;
    cfg.rho_nu = 0.6; // sums to 1 but ordered the wrong way
    try {
        validate_config(cfg);
        FAIL("expected power-split-order");
    } catch (const ConfigError& e) {
        CHECK(e.code() == "power-split-order");
    }
    cfg.rho_fu = 0.8;
    cfg.rho_nu = 0.1;
    try {
        validate_config(cfg);
        FAIL("expected power-split-sum");
    } catch (const ConfigError& e) {
        CHECK(e.code() == "power-split-sum");
    }
}

TEST_CASE("config file round trip with overrides") {
    std::istringstream in(
        "# comment\n"
        "sysmodel.gamma_u_db = 25\n"
        "channel.m = 3\n"
        "channel.omega = 0   # pCSI\n"
        "sysmodel.kq = 4\n");
    ScenarioConfig cfg = load_config(in, "inline");
    CHECK(cfg.gamma_u_db == 25.0);
    CHECK(cfg.m == 3);
    CHECK(cfg.omega.fu == 0.0);
    CHECK(cfg.omega.ne == 0.0);
    CHECK(cfg.far_count == 4);
    CHECK(cfg.near_count == 4);

    apply_override(cfg, "h_u", "75.5");
    CHECK(cfg.uav.h == 75.5);
    apply_override(cfg, "analytic.lemma1_inner_map", "as-printed");
    CHECK(cfg.lemma1_inner_map == Lemma1InnerMap::AsPrinted);

    CHECK_THROWS_AS(apply_override(cfg, "no_such_key", "1"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "channel.m", "2.5"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "eta", "abc"), ConfigError);
}

TEST_CASE("per-class overrides after the scalar shorthand") {
    ScenarioConfig cfg;
    apply_override(cfg, "channel.xi", "2");
    apply_override(cfg, "channel.xi_fe", "0.5");
    CHECK(cfg.xi.fu == 2.0);
    CHECK(cfg.xi.fe == 0.5);
}
