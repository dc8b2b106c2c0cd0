#include "sscp/protocol.hpp"

#include <cassert>
#include <cmath>

namespace sscp {

ZCoeffs z_coefficients(const ScenarioConfig& cfg, const LinkSet& links, const PhaseTiming& timing) {
    if (!(timing.t_th > 0.0))
        throw ConfigError("nonpositive-offload-window", "sysmodel.eta",
                          "offload window must be positive");
    const double gamma_u = db_to_linear(cfg.gamma_u_db);
    const double gamma_e = db_to_linear(cfg.gamma_e_db);

    ZCoeffs z;
    z.gamma_fu = cfg.rho_fu * cfg.beta * gamma_u * timing.t_wpt / (links.fu.mean_path_loss * timing.t_th);
    z.gamma_nu = cfg.rho_nu * cfg.beta * gamma_u * timing.t_wpt / (links.nu.mean_path_loss * timing.t_th);
    z.z1 = z.gamma_fu / links.fu.mean_path_loss;
    z.z2 = z.gamma_nu / links.nu.mean_path_loss;
    z.z3 = z.z1 * cfg.omega.fu * cfg.omega.fu + z.z2 * cfg.omega.nu * cfg.omega.nu + 1.0;
    z.z4 = cfg.nu1 * z.z1 * cfg.omega.fu * cfg.omega.fu + z.z2 * cfg.omega.nu * cfg.omega.nu + 1.0;
    z.z5 = cfg.rho_fe * gamma_e / links.fe.mean_path_loss;
    z.z6 = cfg.rho_ne * gamma_e / links.ne.mean_path_loss;
    z.z7 = z.z5 * cfg.omega.fe + z.z6 * cfg.omega.ne + 1.0;
    z.z8 = z.z6 * cfg.omega.ne + 1.0;
    z.nu1 = cfg.nu1;
    return z;
}

double harvested_energy(const ScenarioConfig& cfg, const LinkGeometry& link, double raw_gain) {
    const double p_u = db_to_linear(cfg.gamma_u_db); // unit-noise transmit power
    return cfg.beta * p_u * cfg.eta * cfg.T * raw_gain / link.mean_path_loss;
}

FourSinr sinrs(const ZCoeffs& z, const ChannelDraw& d) {
    FourSinr s;
    const double a2 = d.a * d.a, b2 = d.b * d.b;
    s.f_u = z.z1 * a2 / (z.z2 * b2 + z.z3);
    s.n_u = z.z2 * b2 / (z.nu1 * z.z1 * a2 + z.z4);
    s.f_e = z.z5 * d.x / (z.z6 * d.y + z.z7);
    s.n_e = z.z6 * d.y / z.z8;
    return s;
}

Thresholds thresholds(const ScenarioConfig& cfg, const PhaseTiming& timing) {
    Thresholds t;
    t.c_off_f = offload_bits_far(cfg);
    t.c_off_n = offload_bits_near(cfg);
    t.r_f = t.c_off_f / timing.t_th;
    t.r_n = t.c_off_n / timing.t_th;
    const double ln2 = 0.69314718055994530942;
    t.zeta_f = std::expm1(ln2 * t.c_off_f / (cfg.W * timing.t_th * timing.t_th));
    t.zeta_n = std::expm1(ln2 * t.c_off_n / (cfg.W * timing.t_th * timing.t_th));
    t.del_f = std::exp2(t.r_f / (cfg.W * timing.t_th));
    t.del_n = std::exp2(t.r_n / (cfg.W * timing.t_th));
    return t;
}

SecrecySnapshot capacities_and_secrecy(const FourSinr& s, const PhaseTiming& timing, double W) {
    SecrecySnapshot snap;
    snap.sinr = s;
    const double wt = timing.t_th * W;
    snap.cap_f_u = wt * std::log2(1.0 + s.f_u);
    snap.cap_n_u = wt * std::log2(1.0 + s.n_u);
    snap.cap_f_e = wt * std::log2(1.0 + s.f_e);
    snap.cap_n_e = wt * std::log2(1.0 + s.n_e);
    snap.sec_f = std::max(0.0, snap.cap_f_u - snap.cap_f_e);
    snap.sec_n = std::max(0.0, snap.cap_n_u - snap.cap_n_e);
    return snap;
}

bool success_event(SecrecySnapshot& snap, const Thresholds& thr, const PhaseTiming& timing) {
    snap.t_off_f = thr.c_off_f == 0.0 ? 0.0 : thr.c_off_f / snap.cap_f_u;
    snap.t_off_n = thr.c_off_n == 0.0 ? 0.0 : thr.c_off_n / snap.cap_n_u;
    snap.success = snap.t_off_f <= timing.t_th && snap.t_off_n <= timing.t_th &&
                   snap.sec_f >= thr.r_f && snap.sec_n >= thr.r_n;
    assert(snap.success == success_threshold_form(snap.sinr, thr));
    return snap.success;
}

bool success_threshold_form(const FourSinr& s, const Thresholds& thr) {
    const bool far_ok = thr.c_off_f == 0.0 ||
                        (s.f_u >= thr.zeta_f && 1.0 + s.f_u >= thr.del_f * (1.0 + s.f_e));
    const bool near_ok = thr.c_off_n == 0.0 ||
                         (s.n_u >= thr.zeta_n && 1.0 + s.n_u >= thr.del_n * (1.0 + s.n_e));
    return far_ok && near_ok;
}

DerivedScenario derive_scenario(const ScenarioConfig& cfg) {
    DerivedScenario d;
    d.links = link_set(cfg);
    d.timing = phase_timing(cfg);
    d.z = z_coefficients(cfg, d.links, d.timing);
    d.thr = thresholds(cfg, d.timing);
    return d;
}

} // namespace sscp
