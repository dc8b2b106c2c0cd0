#pragma once

#include "sscp/channel.hpp"
#include "sscp/sysmodel.hpp"
#include "sscp/types.hpp"

namespace sscp {

// Per-scenario constants of the four SINR expressions. z1/z2 carry the
// harvest-then-transmit cascade of the uplink legs (the mean path loss enters
// once in the effective SNR and once more in z, i.e. squared overall); z3/z4
// and z7/z8 absorb the channel-estimation error variances into the
// denominators - squared variances on the UAV side, first powers on the
// eavesdropper side, exactly as the model prescribes.
struct ZCoeffs {
    double z1 = 0, z2 = 0, z3 = 1, z4 = 1;
    double z5 = 0, z6 = 0, z7 = 1, z8 = 1;
    double gamma_fu = 0; // effective post-harvest SNR factor, far leg
    double gamma_nu = 0; // effective post-harvest SNR factor, near leg
    double nu1 = 0;      // residual SIC factor, needed alongside z1 in the near SINR
};

ZCoeffs z_coefficients(const ScenarioConfig& cfg, const LinkSet& links, const PhaseTiming& timing);

// Harvested energy of one device over the WPT phase, E = beta*P*t_wpt*|g|^2/L.
// The broadcast power is the configured UAV SNR on a unit-noise scale.
double harvested_energy(const ScenarioConfig& cfg, const LinkGeometry& link, double raw_gain);

// Estimated channel powers of one protocol round: best-of-cluster uplink
// gains a, b and the selected devices' eavesdropper-leg gains x, y.
struct ChannelDraw {
    double a = 0, b = 0, x = 0, y = 0;
};

struct FourSinr {
    double f_u = 0, n_u = 0; // far/near detected at the UAV
    double f_e = 0, n_e = 0; // far/near detected at the eavesdropper
};

// The four SINR ratios. The uplink legs square the channel powers (a^2, b^2),
// the eavesdropper legs use first powers - as the model prescribes.
FourSinr sinrs(const ZCoeffs& z, const ChannelDraw& draw);

// Offload sizes, required rates and their equivalent SINR-domain thresholds.
// zeta = 2^(C_off/(W*T_th^2)) - 1 and del = 2^(R/(W*T_th)) with R = C_off/T_th,
// so zeta = del - 1 up to rounding.
struct Thresholds {
    double c_off_f = 0, c_off_n = 0; // [bits]
    double r_f = 0, r_n = 0;         // required rates C_off/T_th
    double zeta_f = 0, zeta_n = 0;   // uplink SINR thresholds
    double del_f = 1, del_n = 1;     // capacity-ratio thresholds
};

Thresholds thresholds(const ScenarioConfig& cfg, const PhaseTiming& timing);

// One evaluated protocol round.
struct SecrecySnapshot {
    FourSinr sinr;
    double cap_f_u = 0, cap_n_u = 0; // [bits]
    double cap_f_e = 0, cap_n_e = 0;
    double sec_f = 0, sec_n = 0;     // secrecy capacities, clamped at 0
    double t_off_f = 0, t_off_n = 0; // [s]
    bool success = false;
};

// Capacities over the offload window and the nonnegative secrecy gaps.
SecrecySnapshot capacities_and_secrecy(const FourSinr& s, const PhaseTiming& timing, double W);

// Joint success event: both devices offload within the window and both
// secrecy capacities reach their required rates. Fills t_off/success on the
// snapshot and returns the event evaluated from those definitions directly.
bool success_event(SecrecySnapshot& snap, const Thresholds& thr, const PhaseTiming& timing);

// Same event through the SINR-domain thresholds:
// gamma_U >= zeta and (1+gamma_U)/(1+gamma_E) >= del per device, with a zero
// required rate satisfied unconditionally. Agrees with success_event on every
// draw; both forms are exposed so tests can assert that.
bool success_threshold_form(const FourSinr& s, const Thresholds& thr);

// Everything derived from a validated config that the evaluators share.
struct DerivedScenario {
    LinkSet links;
    PhaseTiming timing;
    ZCoeffs z;
    Thresholds thr;
};

DerivedScenario derive_scenario(const ScenarioConfig& cfg);

} // namespace sscp
