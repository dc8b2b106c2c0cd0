#include "sscp/channel.hpp"

#include <cmath>
#include <numbers>

namespace sscp {

namespace detail {

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double factorial(int n) {
    static const double table[21] = {1.0,
                                     1.0,
                                     2.0,
                                     6.0,
                                     24.0,
                                     120.0,
                                     720.0,
                                     5040.0,
                                     40320.0,
                                     362880.0,
                                     3628800.0,
                                     39916800.0,
                                     479001600.0,
                                     6227020800.0,
                                     87178291200.0,
                                     1307674368000.0,
                                     20922789888000.0,
                                     355687428096000.0,
                                     6402373705728000.0,
                                     121645100408832000.0,
                                     2432902008176640000.0};
    if (n <= 20) return table[n];
    return std::exp(log_factorial(n));
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (n <= 20) return factorial(n) / (factorial(k) * factorial(n - k));
    return std::round(std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k)));
}

} // namespace detail

LinkGeometry link_geometry(const Coord3& a, const Coord3& b, const EnvProfile& env,
                           PathLossVariant variant) {
    const double dx = b.x - a.x, dy = b.y - a.y, dh = b.h - a.h;
    const double dist = std::sqrt(dx * dx + dy * dy + dh * dh);
    if (!(dist > 0.0))
        throw ConfigError("degenerate-link", "sysmodel", "link endpoints coincide");

    LinkGeometry g;
    g.distance = dist;
    g.elevation = std::asin(std::abs(dh) / dist);

    const double freq_factor = env.c / (4.0 * std::numbers::pi * env.f_c);
    const double exponent = variant == PathLossVariant::AsPrinted ? -1.0 : -2.0;
    const double k_los = env.mu_los * std::pow(freq_factor, exponent);
    const double k_nlos = env.mu_nlos * std::pow(freq_factor, exponent);

    const double sig =
        1.0 + env.tau1 * std::exp(-(180.0 / std::numbers::pi) * env.tau2 * g.elevation +
                                  env.tau2 * env.tau1);
    g.mean_path_loss = (k_nlos + (k_los - k_nlos) / sig) * std::pow(dist, env.theta);
    return g;
}

LinkSet link_set(const ScenarioConfig& cfg) {
    LinkSet s;
    s.fu = link_geometry(cfg.far_cluster, cfg.uav, cfg.env, cfg.pathloss_variant);
    s.nu = link_geometry(cfg.near_cluster, cfg.uav, cfg.env, cfg.pathloss_variant);
    s.fe = link_geometry(cfg.far_cluster, cfg.eve, cfg.env, cfg.pathloss_variant);
    s.ne = link_geometry(cfg.near_cluster, cfg.eve, cfg.env, cfg.pathloss_variant);
    return s;
}

double gamma_power_pdf(double u, const FadingSpec& spec) {
    if (u < 0.0) return 0.0;
    const double rate = spec.m / spec.xi;
    const double x = rate * u;
    if (x > 745.0) return 0.0;
    return std::pow(u, spec.m - 1) / detail::factorial(spec.m - 1) * std::pow(rate, spec.m) *
           std::exp(-x);
}

double gamma_power_cdf(double u, const FadingSpec& spec) {
    if (u <= 0.0) return 0.0;
    const double x = spec.m / spec.xi * u;
    if (x > 745.0) return 1.0;
    double term = std::exp(-x);
    double sum = term;
    for (int s = 1; s < spec.m; ++s) {
        term *= x / s;
        sum += term;
    }
    return 1.0 - sum;
}

std::vector<OrderStatTerm> enumerate_orderstat_terms(int Z, const FadingSpec& spec) {
    if (Z < 1) throw ConfigError("device-count", "channel", "Z must be >= 1");
    if (spec.m < 2)
        throw ConfigError("analytic-unsupported", "channel.m",
                          "order-statistic term expansion needs integer m >= 2");

    const int arg = Z - 1;
    const int m = spec.m;
    const double rate = m / spec.xi;
    const bool big = m + Z > 20; // log-space coefficients above this

    // log of the s-th series coefficient (1/s!) * rate^s
    std::vector<double> log_coeff(m);
    for (int s = 0; s < m; ++s) log_coeff[s] = s * std::log(rate) - detail::log_factorial(s);

    std::vector<OrderStatTerm> out;
    std::vector<int> tuple(m - 1, 0);

    for (int p = 0; p <= arg; ++p) {
        // nested loops p1 <= p, p2 <= p - p1, ... realized by recursion
        auto emit = [&](auto&& self, int idx, int rem) -> void {
            if (idx == m - 1) {
                const int residual = rem; // multiplicity of the top series term
                OrderStatTerm t;
                t.p = p;
                t.tuple = tuple;
                int pbar = (m - 1) * residual;
                for (int s = 0; s < m - 1; ++s) pbar += s * tuple[s];
                t.pbar = pbar;

                if (big) {
                    // C(arg,p) * multinomial(p; tuple, residual) in log space
                    double lg = detail::log_factorial(arg) - detail::log_factorial(arg - p) -
                                detail::log_factorial(residual);
                    double lphi2 = residual * log_coeff[m - 1];
                    for (int s = 0; s < m - 1; ++s) {
                        lg -= detail::log_factorial(tuple[s]);
                        lphi2 += tuple[s] * log_coeff[s];
                    }
                    t.coefficient = ((p % 2) ? -1.0 : 1.0) * std::exp(lg + lphi2);
                } else {
                    double phi1 = detail::binomial(arg, p);
                    double lphi2 = residual * log_coeff[m - 1];
                    int r = p;
                    for (int s = 0; s < m - 1; ++s) {
                        phi1 *= detail::binomial(r, tuple[s]);
                        r -= tuple[s];
                        lphi2 += tuple[s] * log_coeff[s];
                    }
                    t.coefficient = ((p % 2) ? -1.0 : 1.0) * phi1 * std::exp(lphi2);
                }
                out.push_back(std::move(t));
                return;
            }
            for (int v = 0; v <= rem; ++v) {
                tuple[idx] = v;
                self(self, idx + 1, rem - v);
            }
            tuple[idx] = 0;
        };
        emit(emit, 0, p);
    }
    return out;
}

double orderstat_pdf(double u, int Z, const FadingSpec& spec) {
    if (u < 0.0) return 0.0;
    const double rate = spec.m / spec.xi;
    const double zdd =
        Z / detail::factorial(spec.m - 1) * std::pow(rate, spec.m); // leading density factor
    double sum = 0.0, comp = 0.0; // Kahan: coefficients alternate in sign
    for (const auto& t : enumerate_orderstat_terms(Z, spec)) {
        const double ex = -u * rate * (t.p + 1);
        const double v =
            ex < -745.0 ? 0.0 : t.coefficient * std::pow(u, spec.m - 1 + t.pbar) * std::exp(ex);
        const double y = v - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return zdd * sum;
}

double orderstat_cdf(double u, int Z, const FadingSpec& spec) {
    if (u <= 0.0) return 0.0;
    const double rate = spec.m / spec.xi;
    double sum = 0.0, comp = 0.0;
    for (const auto& t : enumerate_orderstat_terms(Z + 1, spec)) {
        const double ex = -t.p * u * rate;
        const double v = ex < -745.0 ? 0.0 : t.coefficient * std::pow(u, t.pbar) * std::exp(ex);
        const double y = v - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return sum;
}

double orderstat_pdf_direct(double u, int Z, const FadingSpec& spec) {
    return Z * gamma_power_pdf(u, spec) * std::pow(gamma_power_cdf(u, spec), Z - 1);
}

double orderstat_cdf_direct(double u, int Z, const FadingSpec& spec) {
    return std::pow(gamma_power_cdf(u, spec), Z);
}

} // namespace sscp
