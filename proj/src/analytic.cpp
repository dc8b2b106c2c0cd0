#include "sscp/analytic.hpp"

#include <cmath>
#include <numbers>

#include "sscp/channel.hpp"

namespace sscp {

namespace detail {

double gamma_tail_integral(int deg, double rate, double upper) {
    const double full = factorial(deg) / std::pow(rate, deg + 1);
    const double e = rate * upper;
    if (e > 700.0) return full;
    double cut = 0.0;
    double upper_pow = 1.0;
    for (int k = 0; k <= deg; ++k) {
        cut += factorial(deg) / factorial(k) * upper_pow / std::pow(rate, deg + 1 - k);
        upper_pow *= upper;
    }
    return full - cut * std::exp(-e);
}

} // namespace detail

namespace {

constexpr double pi = std::numbers::pi;

// exp underflow cutoff; exponents below this make a whole term vanish before
// any companion power can overflow.
constexpr double exp_floor = -700.0;

struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

// One cluster's order-statistic expansion, flattened for the hot loops.
struct TermSet {
    std::vector<double> coeff;
    std::vector<int> p;
    std::vector<int> pbar;
    int max_pbar = 0;
    int max_p = 0;

    explicit TermSet(int Z, const FadingSpec& spec) {
        for (const auto& t : enumerate_orderstat_terms(Z, spec)) {
            coeff.push_back(t.coefficient);
            p.push_back(t.p);
            pbar.push_back(t.pbar);
            max_pbar = std::max(max_pbar, t.pbar);
            max_p = std::max(max_p, t.p);
        }
    }
};

// Sum_j coeff_j * v^(m-1+pbar_j) * base^(p_j+1) with base = exp(-m*v/xi),
// via iterated power tables; this is the density's term sum at v.
class PowerSum {
public:
    PowerSum(const TermSet& terms, int m) : terms_(terms) {
        vpow_.resize(static_cast<size_t>(m - 1 + terms.max_pbar) + 1);
        bpow_.resize(static_cast<size_t>(terms.max_p + 1) + 1);
        m_ = m;
    }

    double operator()(double v, double base) {
        vpow_[0] = 1.0;
        for (size_t j = 1; j < vpow_.size(); ++j) vpow_[j] = vpow_[j - 1] * v;
        bpow_[0] = 1.0;
        for (size_t j = 1; j < bpow_.size(); ++j) bpow_[j] = bpow_[j - 1] * base;
        Kahan acc;
        for (size_t j = 0; j < terms_.coeff.size(); ++j)
            acc.add(terms_.coeff[j] * vpow_[static_cast<size_t>(m_ - 1 + terms_.pbar[j])] *
                    bpow_[static_cast<size_t>(terms_.p[j] + 1)]);
        return acc.sum;
    }

private:
    const TermSet& terms_;
    std::vector<double> vpow_, bpow_;
    int m_ = 2;
};

// Shared constants of the innermost closed-form block.
struct BracketConstants {
    int m;
    double lam_ne; // m / xi_ne
    double m_over_xi_fe;
    double z6_over_z7;
    std::vector<double> series_coeff; // (m/xi_fe)^s / s!

    BracketConstants(int m_, double xi_ne, double xi_fe, double z6, double z7) : m(m_) {
        lam_ne = m / xi_ne;
        m_over_xi_fe = m / xi_fe;
        z6_over_z7 = z6 / z7;
        series_coeff.resize(m);
        for (int s = 0; s < m; ++s)
            series_coeff[s] = std::pow(m_over_xi_fe, s) / detail::factorial(s);
    }
};

// Eavesdropper-constrained part of the innermost integral: the series over
// the far-device secrecy margin, each term weighted by the truncated moment
// integral at rate theta3. Both closed forms subtract this from a head term.
double bracket_tail(const BracketConstants& c, double lim, double theta1) {
    if (!(lim > 0.0)) return 0.0;
    theta1 = std::max(theta1, 0.0);
    const int m = c.m;
    const double e_t1 = c.m_over_xi_fe * theta1;
    if (-e_t1 <= exp_floor) return 0.0;

    const double theta3 = c.lam_ne + c.m_over_xi_fe * c.z6_over_z7 * theta1;
    double t1_pow = 1.0; // theta1^s
    Kahan acc;
    for (int s = 0; s < m; ++s) {
        double choose = 1.0;    // C(s, k2)
        double ratio_pow = 1.0; // (z6/z7)^k2
        for (int k2 = 0; k2 <= s; ++k2) {
            acc.add(c.series_coeff[s] * t1_pow * choose * ratio_pow *
                    detail::gamma_tail_integral(m - 1 + k2, theta3, lim));
            choose *= static_cast<double>(s - k2) / (k2 + 1);
            ratio_pow *= c.z6_over_z7;
        }
        t1_pow *= theta1;
    }
    return std::exp(-e_t1) * acc.sum;
}

// Full innermost integral over the near eavesdropper leg, head minus tail.
// Zero when the y upper limit is non-positive.
double inner_bracket(const BracketConstants& c, double lim, double theta1) {
    if (!(lim > 0.0)) return 0.0;
    return detail::gamma_tail_integral(c.m - 1, c.lam_ne, lim) - bracket_tail(c, lim, theta1);
}

struct LemmaSetup {
    DerivedScenario der;
    TermSet terms_h; // near cluster, Sum_h(Q-1)
    TermSet terms_t; // far cluster, Sum_t(K-1)
    BracketConstants bracket;
    double kddot, qddot; // leading density factors of the two clusters
    double lam_fu, lam_nu;

    LemmaSetup(const ScenarioConfig& cfg)
        : der(derive_scenario(cfg)),
          terms_h(cfg.near_count, FadingSpec{cfg.m, cfg.xi.nu}),
          terms_t(cfg.far_count, FadingSpec{cfg.m, cfg.xi.fu}),
          bracket(cfg.m, cfg.xi.ne, cfg.xi.fe, der.z.z6, der.z.z7) {
        kddot = cfg.far_count / detail::factorial(cfg.m - 1) * std::pow(cfg.m / cfg.xi.fu, cfg.m);
        qddot = cfg.near_count / detail::factorial(cfg.m - 1) * std::pow(cfg.m / cfg.xi.nu, cfg.m);
        lam_fu = cfg.m / cfg.xi.fu;
        lam_nu = cfg.m / cfg.xi.nu;
    }
};

void require_analytic(const ScenarioConfig& cfg) {
    validate_config(cfg);
    if (cfg.m < 2)
        throw ConfigError("analytic-unsupported", "channel.m",
                          "closed-form route needs integer m >= 2; use the reference or "
                          "Monte-Carlo route for m = 1");
}

bool trivial_event(const ScenarioConfig& cfg) { return offload_bits_far(cfg) == 0.0 && offload_bits_near(cfg) == 0.0; }

} // namespace

QuadratureGrid chebyshev_grid(int order, GridMapping mapping, double lo, double hi) {
    if (order < 1)
        throw ConfigError("quadrature-order", "analytic.quad_o", "grid order must be >= 1");
    if (mapping == GridMapping::Lemma1Inner && hi < lo)
        throw ConfigError("invalid-limits", "analytic",
                          "inner grid upper limit below lower limit");
    QuadratureGrid g;
    g.phi.resize(order);
    g.omega.resize(order);
    g.wp.resize(order);
    for (int i = 0; i < order; ++i) {
        const double phi = std::cos(pi * (2.0 * i + 1.0) / (2.0 * order));
        g.phi[i] = phi;
        switch (mapping) {
        case GridMapping::Lemma1Outer:
            g.omega[i] = 0.5 * (phi + 1.0);
            g.wp[i] = -1.0 / std::log(g.omega[i]);
            break;
        case GridMapping::Lemma2Outer:
        case GridMapping::Lemma2Inner:
            g.omega[i] = 0.5 * (phi + 1.0) * std::exp(-lo);
            g.wp[i] = lo - std::log(0.5 * (phi + 1.0));
            break;
        case GridMapping::Lemma1Inner:
            g.omega[i] = 0.5 * (phi + 1.0) * (hi - lo) + lo;
            g.wp[i] = g.omega[i];
            break;
        }
    }
    return g;
}

SscpEstimate sscp_isic(const ScenarioConfig& cfg) {
    require_analytic(cfg);
    if (!(cfg.nu1 > 0.0))
        throw ConfigError("analytic-unsupported", "sysmodel.nu1",
                          "residual-SIC closed form needs nu1 > 0; use sscp_psic");

    SscpEstimate est;
    est.method = Method::Lemma1;
    est.quad_outer = cfg.quad_o;
    est.quad_inner = cfg.quad_n;
    if (trivial_event(cfg)) {
        est.value = 1.0;
        return est;
    }

    const LemmaSetup s(cfg);
    const ZCoeffs& z = s.der.z;
    const Thresholds& thr = s.der.thr;
    const int m = cfg.m;
    const int O = cfg.quad_o, N = cfg.quad_n;
    const bool exp_map = cfg.lemma1_inner_map == Lemma1InnerMap::ExpMap;

    const QuadratureGrid outer = chebyshev_grid(O, GridMapping::Lemma1Outer);
    QuadratureGrid inner_base = chebyshev_grid(N, GridMapping::Lemma1Inner, 0.0, 1.0);
    std::vector<double> inner_weight(N);
    for (int n = 0; n < N; ++n)
        inner_weight[n] = std::sqrt(1.0 - inner_base.phi[n] * inner_base.phi[n]);

    PowerSum hsum(s.terms_h, m);
    PowerSum tsum(s.terms_t, m);

    const double psi1c = pi * pi * s.kddot * s.qddot /
                         (4.0 * N * O * detail::factorial(m - 1)) *
                         std::pow(m / cfg.xi.ne, m);

    Kahan total;
    for (int o = 0; o < O; ++o) {
        const double wp = outer.wp[o];
        const double wp2 = wp * wp;
        const double d3_sq = (z.z2 * wp2 - z.z4 * thr.zeta_n) / (cfg.nu1 * z.z1 * thr.zeta_n);
        if (!(d3_sq > 0.0)) continue;
        const double d3 = std::sqrt(d3_sq);
        const double d1 = std::sqrt(thr.zeta_f * (z.z2 * wp2 + z.z3) / z.z1);
        if (!(d3 > d1)) continue;
        if (d1 > 500.0) continue; // far-gain tail mass beyond reach, 1/omega would overflow

        const double w_o = std::sqrt(1.0 - outer.phi[o] * outer.phi[o]);
        const double e_b = -wp * s.lam_nu;
        const double base_b = e_b > exp_floor ? std::exp(e_b) : 0.0;
        if (base_b == 0.0) continue;
        // omega_o^(wp^2*m(h+1)/xi - 1) / ln^2(omega_o) == e^(-wp*m(h+1)/xi) * wp^2 / omega_o
        const double h_factor = hsum(wp, base_b) * wp2 / outer.omega[o];
        if (h_factor == 0.0) continue;

        // Inner nodes over the far gain on [d1, d3]: either the linear map as
        // specified or the exponential map of the same interval.
        double width = 0.0;
        if (exp_map) {
            const double e1 = std::exp(-d1), e3 = std::exp(-d3);
            width = e1 - e3;
            if (!(width > 0.0)) continue;
            for (int n = 0; n < N; ++n) {
                const double om = 0.5 * (inner_base.phi[n] + 1.0) * width + e3;
                inner_base.omega[n] = om;
                inner_base.wp[n] = -std::log(om);
            }
        } else {
            width = d3 - d1;
            for (int n = 0; n < N; ++n) {
                const double a = 0.5 * (inner_base.phi[n] + 1.0) * width + d1;
                inner_base.omega[n] = 1.0;
                inner_base.wp[n] = a;
            }
        }

        const double del_n_scale = z.z8 / (z.z6 * thr.del_n);
        const double del_f_scale = z.z7 / (z.z5 * thr.del_f);
        const double denom_f = z.z2 * wp2 + z.z3;

        Kahan nsum;
        for (int n = 0; n < N; ++n) {
            const double a = inner_base.wp[n];
            const double a2 = a * a;
            const double e_a = -a * s.lam_fu;
            const double base_a = e_a > exp_floor ? std::exp(e_a) : 0.0;
            const double t_factor = base_a == 0.0 ? 0.0 : tsum(a, base_a);
            if (t_factor == 0.0) continue;

            const double lim = std::max(
                0.0, (1.0 + z.z2 * wp2 / (cfg.nu1 * z.z1 * a2 + z.z4) - thr.del_n) * del_n_scale);
            const double theta1 = (1.0 + z.z1 * a2 / denom_f - thr.del_f) * del_f_scale;
            const double br = inner_bracket(s.bracket, lim, theta1);
            nsum.add(inner_weight[n] * t_factor * br / inner_base.omega[n]);
        }
        total.add(w_o * h_factor * width * nsum.sum);
    }

    est.value = psi1c * total.sum;
    return est;
}

SscpEstimate sscp_psic(const ScenarioConfig& cfg) {
    require_analytic(cfg);
    if (cfg.nu1 != 0.0)
        throw ConfigError("analytic-unsupported", "sysmodel.nu1",
                          "perfect-SIC closed form needs nu1 = 0; use sscp_isic");

    SscpEstimate est;
    est.method = Method::Lemma2;
    est.quad_outer = cfg.quad_o;
    est.quad_inner = cfg.quad_n;
    if (trivial_event(cfg)) {
        est.value = 1.0;
        return est;
    }

    const LemmaSetup s(cfg);
    const ZCoeffs& z = s.der.z;
    const Thresholds& thr = s.der.thr;
    const int m = cfg.m;
    const int O = cfg.quad_o, N = cfg.quad_n;

    const double delta2 = std::sqrt(z.z4 * thr.zeta_n / z.z2);
    if (delta2 > 500.0) { // near-gain tail mass beyond reach, 1/omega would overflow
        est.value = 0.0;
        return est;
    }
    const double e_d2 = std::exp(-delta2);

    const QuadratureGrid outer = chebyshev_grid(O, GridMapping::Lemma2Outer, delta2);
    const QuadratureGrid inner_base = chebyshev_grid(N, GridMapping::Lemma1Inner, 0.0, 1.0);
    std::vector<double> inner_weight(N), inner_halfphi(N);
    for (int n = 0; n < N; ++n) {
        inner_weight[n] = std::sqrt(1.0 - inner_base.phi[n] * inner_base.phi[n]);
        inner_halfphi[n] = 0.5 * (inner_base.phi[n] + 1.0);
    }

    PowerSum hsum(s.terms_h, m);

    const double psi2c = pi * e_d2 * s.kddot * s.qddot / (2.0 * O * detail::factorial(m - 1)) *
                         std::pow(m / cfg.xi.ne, m);
    const int tcount = static_cast<int>(s.terms_t.coeff.size());

    const double del_n_scale = z.z8 / (z.z6 * thr.del_n);
    const double del_f_scale = z.z7 / (z.z5 * thr.del_f);

    std::vector<double> br_node(N), ppow_node(N), q_node(N), om_node(N);

    Kahan total;
    for (int o = 0; o < O; ++o) {
        const double wp = outer.wp[o];
        const double wp2 = wp * wp;
        const double w_o = std::sqrt(1.0 - outer.phi[o] * outer.phi[o]);

        const double e_b = -wp * s.lam_nu;
        const double base_b = e_b > exp_floor ? std::exp(e_b) : 0.0;
        if (base_b == 0.0) continue;
        // omega_o^(m(h+1)/xi - 1) = e^(-wp*m(h+1)/xi) / omega_o
        const double h_factor = hsum(wp, base_b) / outer.omega[o];
        if (h_factor == 0.0) continue;

        const double d1 = std::sqrt(thr.zeta_f * (z.z2 * wp2 + z.z3) / z.z1);
        const double lim5 = std::max(0.0, (1.0 + z.z2 * wp2 / z.z4 - thr.del_n) * del_n_scale);

        // delta1 - delta6 at this node
        const double head =
            lim5 > 0.0 ? detail::gamma_tail_integral(m - 1, s.bracket.lam_ne, lim5) : 0.0;

        const double e_d1 = d1 > 500.0 ? 0.0 : std::exp(-d1);
        const double denom_f = z.z2 * wp2 + z.z3;

        // a-axis nodes from d1 upward; brackets are term-independent.
        if (e_d1 > 0.0) {
            for (int n = 0; n < N; ++n) {
                const double om = inner_halfphi[n] * e_d1;
                const double pn = d1 - std::log(inner_halfphi[n]);
                om_node[n] = om;
                ppow_node[n] = pn;
                const double e_a = -pn * s.lam_fu;
                q_node[n] = e_a > exp_floor ? std::exp(e_a) : 0.0;
                const double theta1 = (1.0 + z.z1 * pn * pn / denom_f - thr.del_f) * del_f_scale;
                br_node[n] = bracket_tail(s.bracket, lim5, theta1);
            }
        }

        Kahan tsum;
        for (int j = 0; j < tcount; ++j) {
            const double ct = s.terms_t.coeff[j];
            const int t = s.terms_t.p[j];
            const int tbar = s.terms_t.pbar[j];
            const double lam_t = s.lam_fu * (t + 1);

            // Psi4: closed-form tail integral of the far density term
            double psi4 = 0.0;
            if (-lam_t * d1 > exp_floor) {
                double d1_pow = 1.0;
                const double fmt = detail::factorial(m - 1 + tbar);
                for (int k3 = 0; k3 <= m - 1 + tbar; ++k3) {
                    psi4 += fmt / detail::factorial(k3) * d1_pow /
                            std::pow(lam_t, m + tbar - k3);
                    d1_pow *= d1;
                }
                psi4 *= std::exp(-lam_t * d1);
            }

            // Psi5 * delta7(delta8 - delta9) summed over the a-nodes
            double quad = 0.0;
            if (e_d1 > 0.0) {
                Kahan qacc;
                for (int n = 0; n < N; ++n) {
                    if (q_node[n] == 0.0 || br_node[n] == 0.0) continue;
                    double pn_pow = 1.0;
                    const double pn = ppow_node[n];
                    for (int e = 0; e < m - 1 + tbar; ++e) pn_pow *= pn;
                    double q_pow = q_node[n];
                    for (int e = 1; e <= t; ++e) q_pow *= q_node[n];
                    qacc.add(inner_weight[n] * pn_pow * q_pow / om_node[n] * br_node[n]);
                }
                quad = pi * e_d1 / (2.0 * N) * qacc.sum;
            }

            tsum.add(ct * (psi4 * head - quad));
        }

        total.add(w_o * h_factor * tsum.sum);
    }

    est.value = psi2c * total.sum;
    return est;
}

SscpEstimate sscp_analytic(const ScenarioConfig& cfg) {
    return cfg.nu1 == 0.0 ? sscp_psic(cfg) : sscp_isic(cfg);
}

} // namespace sscp
