#pragma once

#include <cstdint>
#include <functional>

namespace sscp {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;       // error bound estimate
    std::uint64_t evals = 0;  // integrand evaluations spent
    bool converged = false;
};

// Adaptive Gauss-Kronrod (7,15) on a finite interval. Splits the interval
// with the largest error estimate until the summed estimate drops below
// abs_tol or the evaluation budget runs out. Deterministic: ties in the
// priority queue break on insertion order.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                              double abs_tol, std::uint64_t max_evals);

// Same, over [lo, inf). Substitutes u = -ln t on the rate-normalized axis
// (x = lo + scale * u, t in (0,1]), so an integrand decaying like
// exp(-x/scale) maps to a bounded one. `scale` must be > 0.
QuadResult integrate_semi_infinite(const std::function<double(double)>& f, double lo, double scale,
                                   double abs_tol, std::uint64_t max_evals);

} // namespace sscp
