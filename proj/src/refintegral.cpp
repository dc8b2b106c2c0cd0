#include "sscp/refintegral.hpp"

#include <algorithm>
#include <cmath>

#include "sscp/quadrature.hpp"

namespace sscp {

namespace {

struct RefState {
    std::uint64_t spent = 0;
    std::uint64_t budget = 0;
    double worst_y_err = 0.0;
    double worst_a_err = 0.0;
    std::uint64_t remaining() const { return spent >= budget ? 1 : budget - spent; }
};

// Decay span beyond which the Gamma(m, xi/m) tail is far below tolerance.
double tail_span(const FadingSpec& f, int best_of) {
    return f.xi / f.m * (60.0 + 10.0 * f.m + 3.0 * std::log1p(static_cast<double>(best_of)));
}

} // namespace

SscpEstimate sscp_ref(const ScenarioConfig& cfg) {
    validate_config(cfg);
    const DerivedScenario der = derive_scenario(cfg);
    const ZCoeffs& z = der.z;
    const Thresholds& thr = der.thr;

    SscpEstimate est;
    est.method = Method::Reference;

    // Zero required rates make the event certain.
    if (thr.c_off_f == 0.0 && thr.c_off_n == 0.0) {
        est.value = 1.0;
        return est;
    }

    const FadingSpec fade_fu{cfg.m, cfg.xi.fu}, fade_nu{cfg.m, cfg.xi.nu};
    const FadingSpec fade_fe{cfg.m, cfg.xi.fe}, fade_ne{cfg.m, cfg.xi.ne};
    const int K = cfg.far_count, Q = cfg.near_count;
    const bool psic = cfg.nu1 == 0.0;

    const double tol = cfg.ref_tol;
    const double tol_y = 0.02 * tol, tol_a = 0.18 * tol, tol_b = 0.5 * tol;
    RefState state;
    state.budget = static_cast<std::uint64_t>(cfg.ref_max_evals);

    const double y_span = tail_span(fade_ne, 1);
    const double a_span = tail_span(fade_fu, K);
    const double b_scale = fade_nu.xi / fade_nu.m;
    const double a_scale = fade_fu.xi / fade_fu.m;

    // b below this leaves no feasible near-device SINR.
    const double b_lo = std::sqrt(z.z4 * thr.zeta_n / z.z2);

    auto y_integral = [&](double a, double b) {
        const double a2 = a * a, b2 = b * b;
        const double gain_margin = 1.0 + z.z1 * a2 / (z.z2 * b2 + z.z3) - thr.del_f;
        if (gain_margin <= 0.0) return 0.0;
        const double scale = gain_margin / (z.z5 * thr.del_f);
        const double y_lim = psic ? (1.0 + z.z2 * b2 / z.z4 - thr.del_n) * z.z8 / (z.z6 * thr.del_n)
                                  : (1.0 + z.z2 * b2 / (cfg.nu1 * z.z1 * a2 + z.z4) - thr.del_n) *
                                        z.z8 / (z.z6 * thr.del_n);
        if (!(y_lim > 0.0)) return 0.0;
        auto f = [&](double y) {
            return gamma_power_cdf(scale * (z.z6 * y + z.z7), fade_fe) *
                   gamma_power_pdf(y, fade_ne);
        };
        QuadResult r = integrate_adaptive(f, 0.0, std::min(y_lim, y_span), tol_y,
                                          std::min<std::uint64_t>(state.remaining(), 200'000));
        state.spent += r.evals;
        state.worst_y_err = std::max(state.worst_y_err, r.error);
        return r.value;
    };

    auto a_integral = [&](double b) {
        const double a_lo = std::sqrt(thr.zeta_f * (z.z2 * b * b + z.z3) / z.z1);
        auto f = [&](double a) {
            return orderstat_pdf_direct(a, K, fade_fu) * y_integral(a, b);
        };
        QuadResult r;
        if (psic) {
            r = integrate_semi_infinite(f, a_lo, a_scale, tol_a, 20'000);
        } else {
            const double a_hi_sq = (z.z2 * b * b - z.z4 * thr.zeta_n) / (cfg.nu1 * z.z1 * thr.zeta_n);
            if (!(a_hi_sq > 0.0)) return 0.0;
            const double a_hi = std::sqrt(a_hi_sq);
            if (a_hi <= a_lo) return 0.0;
            r = integrate_adaptive(f, a_lo, std::min(a_hi, a_lo + a_span), tol_a, 20'000);
        }
        state.worst_a_err = std::max(state.worst_a_err, r.error);
        return r.value;
    };

    auto b_integrand = [&](double b) {
        return orderstat_pdf_direct(b, Q, fade_nu) * a_integral(b);
    };

    QuadResult rb = integrate_semi_infinite(b_integrand, b_lo, b_scale, tol_b, 20'000);

    est.value = rb.value;
    est.error_bound = rb.error + state.worst_a_err + state.worst_y_err;
    if (state.spent >= state.budget && est.error_bound > tol) {
        throw ToleranceError("reference integration budget of " +
                                 std::to_string(state.budget) +
                                 " evaluations exhausted before reaching tolerance",
                             est.value, est.error_bound);
    }
    return est;
}

} // namespace sscp
