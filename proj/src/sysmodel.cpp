#include "sscp/sysmodel.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace sscp {

PhaseTiming phase_timing(const ScenarioConfig& cfg) {
    PhaseTiming t;
    t.t_wpt = cfg.eta * cfg.T;
    t.t_com = (offload_bits_far(cfg) + offload_bits_near(cfg)) * cfg.cycles_per_bit / cfg.f_mec;
    t.t_th = (1.0 - cfg.eta) * cfg.T - t.t_com;
    t.t_down = 0.0;
    if (!(t.t_th > 0.0)) {
        throw ConfigError("nonpositive-offload-window", "sysmodel.eta",
                          "offload window (1-eta)*T - t_com = " + std::to_string(t.t_th) +
                              " s must be positive");
    }
    return t;
}

namespace {

[[noreturn]] void fail(const char* code, const char* key, const std::string& msg) {
    throw ConfigError(code, key, msg);
}

void check_finite(double v, const char* key) {
    if (!std::isfinite(v)) fail("non-finite-value", key, std::string(key) + " must be finite");
}

void check_link_class(const LinkClassParam& p, const char* prefix, bool positive) {
    const double vals[4] = {p.fu, p.nu, p.fe, p.ne};
    const char* suffix[4] = {"_fu", "_nu", "_fe", "_ne"};
    for (int i = 0; i < 4; ++i) {
        std::string key = std::string(prefix) + suffix[i];
        if (!std::isfinite(vals[i])) fail("non-finite-value", key.c_str(), key + " must be finite");
        if (positive && !(vals[i] > 0.0))
            fail("nonpositive-mean-power", key.c_str(), key + " must be > 0");
        if (!positive && vals[i] < 0.0)
            fail("negative-error-variance", key.c_str(), key + " must be >= 0");
    }
}

} // namespace

ScenarioConfig validate_config(const ScenarioConfig& cfg) {
    if (cfg.far_count < 1) fail("device-count", "sysmodel.far.count", "K must be >= 1");
    if (cfg.near_count < 1) fail("device-count", "sysmodel.near.count", "Q must be >= 1");
    if (cfg.m < 1) fail("fading-shape", "channel.m", "Nakagami shape m must be an integer >= 1");

    if (!(cfg.uav.h > 0.0)) fail("uav-altitude", "sysmodel.uav.h", "UAV altitude must be > 0");
    for (const auto& [node, key] : {std::pair{&cfg.far_cluster, "sysmodel.far"},
                                    std::pair{&cfg.near_cluster, "sysmodel.near"},
                                    std::pair{&cfg.eve, "sysmodel.eve"}}) {
        if (node->h != 0.0) fail("ground-node-height", key, std::string(key) + " must have h = 0");
    }

    if (!(cfg.env.mu_los > 0.0) || cfg.env.mu_nlos < cfg.env.mu_los)
        fail("excess-loss-order", "channel.mu_nlos", "need mu_nlos >= mu_los > 0");
    if (cfg.env.theta < 2.0) fail("pathloss-exponent", "channel.theta", "theta must be >= 2");
    if (!(cfg.env.f_c > 0.0)) fail("carrier-frequency", "channel.f_c", "f_c must be > 0");
    if (!(cfg.env.c > 0.0)) fail("wave-speed", "channel.c", "c must be > 0");

    check_link_class(cfg.xi, "channel.xi", true);
    check_link_class(cfg.omega, "channel.omega", false);

    if (!(cfg.nu1 >= 0.0 && cfg.nu1 <= 1.0))
        fail("residual-sic-out-of-range", "sysmodel.nu1", "nu1 must lie in [0,1]");
    if (!(cfg.beta > 0.0 && cfg.beta < 1.0))
        fail("eh-conversion-out-of-range", "sysmodel.beta", "beta must lie in (0,1)");
    if (!(cfg.eta > 0.0 && cfg.eta < 1.0))
        fail("eh-ratio-out-of-range", "sysmodel.eta", "eta must lie in (0,1)");
    if (!(cfg.T > 0.0)) fail("protocol-period", "sysmodel.t", "T must be > 0");
    if (!(cfg.W > 0.0)) fail("bandwidth", "sysmodel.w", "W must be > 0");
    check_finite(cfg.gamma_u_db, "sysmodel.gamma_u_db");
    check_finite(cfg.gamma_e_db, "sysmodel.gamma_e_db");

    for (const auto& [sum, hi, lo, key] :
         {std::tuple{cfg.rho_fu + cfg.rho_nu, cfg.rho_fu, cfg.rho_nu, "sysmodel.rho_fu"},
          std::tuple{cfg.rho_fe + cfg.rho_ne, cfg.rho_fe, cfg.rho_ne, "sysmodel.rho_fe"}}) {
        if (std::abs(sum - 1.0) > 1e-12)
            fail("power-split-sum", key, "power allocation ratios must sum to 1");
        if (!(hi > lo)) fail("power-split-order", key, "far-device ratio must exceed near-device ratio");
    }

    if (!(cfg.sigma_f > 0.0 && cfg.sigma_f < 1.0))
        fail("offload-ratio-out-of-range", "sysmodel.sigma_f", "sigma_f must lie in (0,1)");
    if (!(cfg.sigma_n > 0.0 && cfg.sigma_n < 1.0))
        fail("offload-ratio-out-of-range", "sysmodel.sigma_n", "sigma_n must lie in (0,1)");
    if (cfg.task_bits < 0.0) fail("task-length", "sysmodel.l", "task length must be >= 0");
    if (!(cfg.f_mec > 0.0)) fail("mec-frequency", "sysmodel.f_mec", "f_mec must be > 0");
    if (cfg.cycles_per_bit < 0.0) fail("cycles-per-bit", "sysmodel.varpi", "varpi must be >= 0");

    if (cfg.quad_n < 1 || cfg.quad_o < 1)
        fail("quadrature-order", "analytic.quad_n", "quadrature orders must be >= 1");
    if (!(cfg.ref_tol > 0.0)) fail("reference-tolerance", "ref.tol", "ref.tol must be > 0");
    if (!(cfg.ref_max_evals >= 1.0))
        fail("reference-budget", "ref.max_evals", "ref.max_evals must be >= 1");

    phase_timing(cfg); // throws nonpositive-offload-window
    return cfg;
}

// ---- key/value configuration ----

namespace {

using Setter = std::function<void(ScenarioConfig&, double)>;

struct KeyEntry {
    const char* name;
    const char* alias; // nullptr if none
    const char* doc;
    Setter set;
};

int to_int(double v, const char* key) {
    double r = std::round(v);
    if (std::abs(v - r) > 1e-9 || !std::isfinite(v))
        throw ConfigError("bad-value", key, std::string(key) + " must be an integer");
    return static_cast<int>(r);
}

const std::vector<KeyEntry>& key_table() {
    static const std::vector<KeyEntry> table = {
        {"sysmodel.uav.x", "x_u", "UAV x position x_U [m]",
         [](ScenarioConfig& c, double v) { c.uav.x = v; }},
        {"sysmodel.uav.y", "y_u", "UAV y position y_U [m]",
         [](ScenarioConfig& c, double v) { c.uav.y = v; }},
        {"sysmodel.uav.h", "h_u", "UAV altitude h_U [m]",
         [](ScenarioConfig& c, double v) { c.uav.h = v; }},
        {"sysmodel.far.x", nullptr, "far cluster x position x_F [m]",
         [](ScenarioConfig& c, double v) { c.far_cluster.x = v; }},
        {"sysmodel.far.y", nullptr, "far cluster y position y_F [m]",
         [](ScenarioConfig& c, double v) { c.far_cluster.y = v; }},
        {"sysmodel.far.count", "k", "far cluster device count K",
         [](ScenarioConfig& c, double v) { c.far_count = to_int(v, "sysmodel.far.count"); }},
        {"sysmodel.near.x", nullptr, "near cluster x position x_N [m]",
         [](ScenarioConfig& c, double v) { c.near_cluster.x = v; }},
        {"sysmodel.near.y", nullptr, "near cluster y position y_N [m]",
         [](ScenarioConfig& c, double v) { c.near_cluster.y = v; }},
        {"sysmodel.near.count", "q", "near cluster device count Q",
         [](ScenarioConfig& c, double v) { c.near_count = to_int(v, "sysmodel.near.count"); }},
        {"sysmodel.kq", "kq", "sets both device counts K = Q",
         [](ScenarioConfig& c, double v) {
             c.far_count = c.near_count = to_int(v, "sysmodel.kq");
         }},
        {"sysmodel.eve.x", nullptr, "eavesdropper x position x_E [m]",
         [](ScenarioConfig& c, double v) { c.eve.x = v; }},
        {"sysmodel.eve.y", nullptr, "eavesdropper y position y_E [m]",
         [](ScenarioConfig& c, double v) { c.eve.y = v; }},
        {"sysmodel.eta", "eta", "energy-harvesting time ratio eta in (0,1)",
         [](ScenarioConfig& c, double v) { c.eta = v; }},
        {"sysmodel.beta", "beta", "energy conversion efficiency beta in (0,1)",
         [](ScenarioConfig& c, double v) { c.beta = v; }},
        {"sysmodel.t", "t", "protocol period T [s]",
         [](ScenarioConfig& c, double v) { c.T = v; }},
        {"sysmodel.w", "w", "bandwidth W [Hz]", [](ScenarioConfig& c, double v) { c.W = v; }},
        {"sysmodel.gamma_u_db", "gamma_u_db", "UAV transmit SNR gamma_U [dB]",
         [](ScenarioConfig& c, double v) { c.gamma_u_db = v; }},
        {"sysmodel.gamma_e_db", "gamma_e_db", "eavesdropper-side SNR gamma_E [dB]",
         [](ScenarioConfig& c, double v) { c.gamma_e_db = v; }},
        {"sysmodel.rho_fu", "rho_fu", "uplink power ratio of the far device rho_F*U",
         [](ScenarioConfig& c, double v) { c.rho_fu = v; }},
        {"sysmodel.rho_nu", "rho_nu", "uplink power ratio of the near device rho_N*U",
         [](ScenarioConfig& c, double v) { c.rho_nu = v; }},
        {"sysmodel.rho_fe", "rho_fe", "eavesdropper-side power ratio rho_F*E",
         [](ScenarioConfig& c, double v) { c.rho_fe = v; }},
        {"sysmodel.rho_ne", "rho_ne", "eavesdropper-side power ratio rho_N*E",
         [](ScenarioConfig& c, double v) { c.rho_ne = v; }},
        {"sysmodel.l", "l", "task length l [bits]",
         [](ScenarioConfig& c, double v) { c.task_bits = v; }},
        {"sysmodel.sigma_f", "sigma_f", "far device offload ratio sigma_F in (0,1)",
         [](ScenarioConfig& c, double v) { c.sigma_f = v; }},
        {"sysmodel.sigma_n", "sigma_n", "near device offload ratio sigma_N in (0,1)",
         [](ScenarioConfig& c, double v) { c.sigma_n = v; }},
        {"sysmodel.f_mec", "f_mec", "edge CPU frequency f_MEC [Hz]",
         [](ScenarioConfig& c, double v) { c.f_mec = v; }},
        {"sysmodel.varpi", "varpi", "CPU cycles per task bit",
         [](ScenarioConfig& c, double v) { c.cycles_per_bit = v; }},
        {"sysmodel.nu1", "nu1", "residual SIC factor nu1 in [0,1] (0 = perfect SIC)",
         [](ScenarioConfig& c, double v) { c.nu1 = v; }},
        {"channel.m", "m", "Nakagami fading shape m (integer >= 1)",
         [](ScenarioConfig& c, double v) { c.m = to_int(v, "channel.m"); }},
        {"channel.xi", "xi", "mean channel power xi, all four links",
         [](ScenarioConfig& c, double v) { c.xi = {v, v, v, v}; }},
        {"channel.xi_fu", nullptr, "mean channel power, far->UAV",
         [](ScenarioConfig& c, double v) { c.xi.fu = v; }},
        {"channel.xi_nu", nullptr, "mean channel power, near->UAV",
         [](ScenarioConfig& c, double v) { c.xi.nu = v; }},
        {"channel.xi_fe", nullptr, "mean channel power, far->eavesdropper",
         [](ScenarioConfig& c, double v) { c.xi.fe = v; }},
        {"channel.xi_ne", nullptr, "mean channel power, near->eavesdropper",
         [](ScenarioConfig& c, double v) { c.xi.ne = v; }},
        {"channel.omega", "omega", "estimation error variance Omega, all four links",
         [](ScenarioConfig& c, double v) { c.omega = {v, v, v, v}; }},
        {"channel.omega_fu", nullptr, "error variance, far->UAV",
         [](ScenarioConfig& c, double v) { c.omega.fu = v; }},
        {"channel.omega_nu", nullptr, "error variance, near->UAV",
         [](ScenarioConfig& c, double v) { c.omega.nu = v; }},
        {"channel.omega_fe", nullptr, "error variance, far->eavesdropper",
         [](ScenarioConfig& c, double v) { c.omega.fe = v; }},
        {"channel.omega_ne", nullptr, "error variance, near->eavesdropper",
         [](ScenarioConfig& c, double v) { c.omega.ne = v; }},
        {"channel.tau1", "tau1", "LoS probability sigmoid parameter tau1",
         [](ScenarioConfig& c, double v) { c.env.tau1 = v; }},
        {"channel.tau2", "tau2", "LoS probability sigmoid parameter tau2",
         [](ScenarioConfig& c, double v) { c.env.tau2 = v; }},
        {"channel.mu_los", "mu_los", "LoS excess path loss mu^LoS",
         [](ScenarioConfig& c, double v) { c.env.mu_los = v; }},
        {"channel.mu_nlos", "mu_nlos", "NLoS excess path loss mu^NLoS",
         [](ScenarioConfig& c, double v) { c.env.mu_nlos = v; }},
        {"channel.theta", "theta", "path-loss exponent theta (>= 2)",
         [](ScenarioConfig& c, double v) { c.env.theta = v; }},
        {"channel.c", "c", "propagation speed c [m/s]",
         [](ScenarioConfig& c, double v) { c.env.c = v; }},
        {"channel.f_c", "f_c", "carrier frequency f_c [Hz]",
         [](ScenarioConfig& c, double v) { c.env.f_c = v; }},
        {"analytic.quad_n", "quad_n", "inner quadrature order N",
         [](ScenarioConfig& c, double v) { c.quad_n = to_int(v, "analytic.quad_n"); }},
        {"analytic.quad_o", "quad_o", "outer quadrature order O",
         [](ScenarioConfig& c, double v) { c.quad_o = to_int(v, "analytic.quad_o"); }},
        {"ref.tol", nullptr, "reference integrator absolute tolerance",
         [](ScenarioConfig& c, double v) { c.ref_tol = v; }},
        {"ref.max_evals", nullptr, "reference integrator evaluation budget",
         [](ScenarioConfig& c, double v) { c.ref_max_evals = v; }},
    };
    return table;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
    const std::string k = trim(key);
    const std::string v = trim(value);
    if (k == "pathloss.variant") {
        if (v == "as-printed") cfg.pathloss_variant = PathLossVariant::AsPrinted;
        else if (v == "fspl-squared") cfg.pathloss_variant = PathLossVariant::FsplSquared;
        else throw ConfigError("bad-value", k, "pathloss.variant must be as-printed or fspl-squared");
        return;
    }
    if (k == "analytic.lemma1_inner_map") {
        if (v == "exp") cfg.lemma1_inner_map = Lemma1InnerMap::ExpMap;
        else if (v == "as-printed") cfg.lemma1_inner_map = Lemma1InnerMap::AsPrinted;
        else throw ConfigError("bad-value", k, "analytic.lemma1_inner_map must be exp or as-printed");
        return;
    }
    std::size_t pos = 0;
    double num = 0.0;
    try {
        num = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("bad-value", k, "cannot parse numeric value '" + v + "' for " + k);
    }
    if (pos != v.size())
        throw ConfigError("bad-value", k, "trailing characters in value '" + v + "' for " + k);
    apply_override(cfg, k, num);
}

void apply_override(ScenarioConfig& cfg, const std::string& key, double value) {
    for (const auto& e : key_table()) {
        if (key == e.name || (e.alias && key == e.alias)) {
            e.set(cfg, value);
            return;
        }
    }
    throw ConfigError("unknown-key", key, "unknown config key '" + key + "'");
}

ScenarioConfig load_config(std::istream& in, const std::string& name) {
    ScenarioConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("bad-syntax", name,
                              name + ":" + std::to_string(lineno) + ": expected key = value");
        apply_override(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config-not-found", path, "cannot open config file " + path);
    return load_config(in, path);
}

std::vector<std::pair<std::string, std::string>> config_key_docs() {
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(key_table().size() + 2);
    for (const auto& e : key_table()) {
        std::string name = e.name;
        if (e.alias) name += " (alias: " + std::string(e.alias) + ")";
        out.emplace_back(std::move(name), e.doc);
    }
    out.emplace_back("pathloss.variant", "as-printed | fspl-squared frequency factor");
    out.emplace_back("analytic.lemma1_inner_map", "exp (default) | as-printed inner node transform");
    return out;
}

} // namespace sscp
