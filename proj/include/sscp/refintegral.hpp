#pragma once

#include "sscp/protocol.hpp"
#include "sscp/types.hpp"

namespace sscp {

// Direct nested adaptive quadrature of the success-probability triple
// integral, used to triangulate the closed forms. Integration follows the
// integral's own order (eavesdropper near-leg y innermost, then uplink far
// gain a, then near gain b); the order-statistic densities enter in their
// direct Z*f*F^(Z-1) form, so this route shares no algebra with the lemma
// evaluators. Works for any integer m >= 1.
//
// Uses cfg.ref_tol (absolute) and cfg.ref_max_evals (innermost integrand
// evaluation budget). Throws ToleranceError with the best estimate and bound
// when the budget is exhausted before the tolerance is met.
SscpEstimate sscp_ref(const ScenarioConfig& cfg);

} // namespace sscp
