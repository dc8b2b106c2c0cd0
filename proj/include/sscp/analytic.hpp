#pragma once

#include <vector>

#include "sscp/protocol.hpp"
#include "sscp/types.hpp"

namespace sscp {

// Node transforms used by the closed-form evaluators. All are built on
// first-kind Chebyshev abscissae phi_i = cos(pi(2i-1)/(2n)).
enum class GridMapping {
    Lemma1Outer, // omega = (phi+1)/2,              wp = -1/ln(omega), covers (0, inf)
    Lemma2Outer, // omega = (phi+1)e^(-lo)/2,       wp = -ln(omega),   covers (lo, inf)
    Lemma1Inner, // omega = (phi+1)(hi-lo)/2 + lo,  wp = omega,        covers (lo, hi)
    Lemma2Inner, // omega = (phi+1)e^(-lo)/2,       wp = -ln(omega),   covers (lo, inf)
};

struct QuadratureGrid {
    std::vector<double> phi;   // Chebyshev abscissae, strictly decreasing
    std::vector<double> omega; // transformed nodes
    std::vector<double> wp;    // integration-variable values at the nodes
};

// Node arrays for one axis. `lo`/`hi` are the map limits where the mapping
// uses them; Lemma1Inner throws invalid-limits when hi < lo.
QuadratureGrid chebyshev_grid(int order, GridMapping mapping, double lo = 0.0, double hi = 0.0);

// Closed-form SSCP with residual SIC interference (nu1 > 0). Needs integer
// m >= 2. The returned value is the raw quadrature output.
SscpEstimate sscp_isic(const ScenarioConfig& cfg);

// Closed-form SSCP under perfect SIC (nu1 = 0). Needs integer m >= 2.
SscpEstimate sscp_psic(const ScenarioConfig& cfg);

// Dispatches on nu1 and records the quadrature orders used.
SscpEstimate sscp_analytic(const ScenarioConfig& cfg);

namespace detail {
// Closed form of the truncated moment integral of t^deg * e^(-rate*t) over
// [0, upper]: deg!/rate^(deg+1) - e^(-rate*upper) * sum_k deg!/k! *
// upper^k / rate^(deg+1-k). This is the delta block both closed forms are
// assembled from.
double gamma_tail_integral(int deg, double rate, double upper);
} // namespace detail

} // namespace sscp
