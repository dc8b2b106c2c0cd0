#pragma once

#include <cmath>
#include <vector>

#include "sscp/sysmodel.hpp"

namespace sscp {

// One node pair: 3D distance, elevation angle and the blended mean path loss.
struct LinkGeometry {
    double distance = 0.0;      // [m]
    double elevation = 0.0;     // [rad], in [0, pi/2]
    double mean_path_loss = 1.0; // dimensionless, > 0
};

// Nakagami-m small-scale fading of one link: the channel power |g|^2 is
// Gamma(shape = m, scale = xi/m), so its mean is xi.
struct FadingSpec {
    int m = 2;
    double xi = 1.0;
};

// Elevation-angle sigmoid blend of LoS/NLoS excess losses times D^theta.
// Throws degenerate-link for coincident nodes.
LinkGeometry link_geometry(const Coord3& a, const Coord3& b, const EnvProfile& env,
                           PathLossVariant variant = PathLossVariant::AsPrinted);

// Geometry of all four links of a scenario.
struct LinkSet {
    LinkGeometry fu, nu, fe, ne;
};
LinkSet link_set(const ScenarioConfig& cfg);

// Channel power density/distribution for a single link.
double gamma_power_pdf(double u, const FadingSpec& spec);
double gamma_power_cdf(double u, const FadingSpec& spec);

// One term of the best-of-Z channel power expansion: the nested multinomial
// index tuple (p1..p_{m-1}) under index p, its signed coefficient
// Xi * (-1)^p * Phi1 * Phi2, and the resulting power offset pbar.
struct OrderStatTerm {
    int p = 0;
    std::vector<int> tuple;
    double coefficient = 1.0;
    int pbar = 0;
};

// Terms of the best-of-Z *density* sum: p runs 0..Z-1 with leading binomial
// C(Z-1, p). The matching distribution sum uses the same enumeration with
// argument Z+1. Requires m >= 2 (the expansion collapses for m = 1).
std::vector<OrderStatTerm> enumerate_orderstat_terms(int Z, const FadingSpec& spec);

// Density/distribution of the maximum of Z i.i.d. channel powers, evaluated
// through the term sums above.
double orderstat_pdf(double u, int Z, const FadingSpec& spec);
double orderstat_cdf(double u, int Z, const FadingSpec& spec);

// Same distributions evaluated directly as Z * f * F^(Z-1) and F^Z; valid for
// any m >= 1 and used as the independent route in cross-checks.
double orderstat_pdf_direct(double u, int Z, const FadingSpec& spec);
double orderstat_cdf_direct(double u, int Z, const FadingSpec& spec);

// Sampling. Rng must expose `double next_u01()` returning uniforms in (0,1).
// Integer-shape gamma draws consume exactly m uniforms each.
template <class Rng>
double sample_channel_power(const FadingSpec& spec, Rng& rng) {
    double acc = 0.0;
    for (int i = 0; i < spec.m; ++i) acc -= std::log(rng.next_u01());
    return acc * (spec.xi / spec.m);
}

template <class Rng>
double sample_best_of(int Z, const FadingSpec& spec, Rng& rng) {
    double best = 0.0;
    for (int i = 0; i < Z; ++i) best = std::max(best, sample_channel_power(spec, rng));
    return best;
}

namespace detail {
// log(n!) with exact table below 21!, lgamma above.
double log_factorial(int n);
double factorial(int n);      // exact up to 20!, exp(log) above
double binomial(int n, int k);
} // namespace detail

} // namespace sscp
