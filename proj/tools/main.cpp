#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sscp/analytic.hpp"
#include "sscp/experiments.hpp"
#include "sscp/montecarlo.hpp"
#include "sscp/refintegral.hpp"
#include "sscp/sysmodel.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_tolerance = 3;
constexpr int exit_io = 4;

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string configs_dir = "configs";
};

std::string key_help_epilog();

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "scenario config file (key = value lines)");
    cmd->add_option("--set", args.overrides,
                    "config override key=value, applied after --config, before validation");
    cmd->add_option("--configs-dir", args.configs_dir,
                    "directory holding the fig3..fig7 study presets");
    cmd->footer(key_help_epilog());
}

sscp::ScenarioConfig build_config(const CommonArgs& args) {
    sscp::ScenarioConfig cfg =
        args.config_path.empty() ? sscp::ScenarioConfig{} : sscp::load_config(args.config_path);
    for (const auto& kv : args.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw sscp::ConfigError("bad-override", kv, "--set needs key=value, got '" + kv + "'");
        sscp::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    return sscp::validate_config(cfg);
}

std::string key_help_epilog() {
    std::ostringstream out;
    out << "Config keys:\n";
    for (const auto& [name, doc] : sscp::config_key_docs())
        out << "  " << name << "\n      " << doc << "\n";
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content))
        throw std::ios_base::failure("cannot write output file " + path);
}

// Figure presets: the checked-in study configs plus their canonical sweep axes.
struct FigurePlan {
    std::string config_file;
    std::vector<sscp::AxisSpec> axes;
};

FigurePlan figure_plan(int figure, const std::string& configs_dir) {
    const std::string base = configs_dir + "/fig" + std::to_string(figure) + ".cfg";
    switch (figure) {
    case 3:
        return {base,
                {{"gamma_u_db", sscp::parse_axis_values("0:40:5")},
                 {"kq", sscp::parse_axis_values("1,2,3")}}};
    case 4:
        return {base, {{"gamma_u_db", sscp::parse_axis_values("0:40:5")}}};
    case 5:
        return {base, {{"h_u", sscp::parse_axis_values("50:300:10")}}};
    case 6:
        return {base, {{"eta", sscp::parse_axis_values("0.05:0.95:0.05")}}};
    case 7:
        return {base,
                {{"x_u", sscp::parse_axis_values("-150:150:30")},
                 {"y_u", sscp::parse_axis_values("-150:150:30")}}};
    default:
        throw sscp::ConfigError("bad-figure", "figure", "figure must be 3..7");
    }
}

// |analytic - mc| <= 3*se + 0.01 at 95% of points and <= 4*se + 0.02 at all.
bool triangle_ok(const std::vector<sscp::SweepRow>& rows, std::ostream& log) {
    std::size_t usable = 0, within3 = 0, within4 = 0;
    for (const auto& row : rows) {
        if (!row.err.empty() || !row.ana || !row.mc) continue;
        ++usable;
        const double diff = std::abs(*row.ana - *row.mc);
        if (diff <= 3.0 * row.mc_stderr + 0.01) ++within3;
        if (diff <= 4.0 * row.mc_stderr + 0.02) ++within4;
    }
    if (usable == 0) {
        log << "triangle: no usable rows\n";
        return false;
    }
    const bool ok = within3 * 100 >= usable * 95 && within4 == usable;
    log << "triangle: " << within3 << "/" << usable << " within 3*se+0.01, " << within4 << "/"
        << usable << " within 4*se+0.02 -> " << (ok ? "pass" : "fail") << "\n";
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"secrecy successful computation probability toolkit"};
    app.require_subcommand(1);
    app.footer(key_help_epilog());

    CommonArgs common;
    std::uint64_t trials = 1'000'000, seed = 1, batch = 65536;
    int workers = 0;

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "closed-form SSCP of one scenario");
    CommonArgs eval_args;
    add_common(eval_cmd, eval_args);
    std::string eval_method = "analytic";
    eval_cmd->add_option("--method", eval_method, "analytic | ref | both")
        ->check(CLI::IsMember({"analytic", "ref", "both"}));

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo SSCP estimate");
    CommonArgs sim_args;
    add_common(sim_cmd, sim_args);
    sim_cmd->add_option("--trials", trials, "number of protocol rounds");
    sim_cmd->add_option("--seed", seed, "base RNG seed");
    sim_cmd->add_option("--workers", workers, "worker threads (affects wall time only)");
    sim_cmd->add_option("--batch", batch, "trials per RNG substream chunk");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep to CSV");
    CommonArgs sweep_args;
    add_common(sweep_cmd, sweep_args);
    std::vector<std::string> axis_texts;
    std::string methods = "analytic,mc";
    std::string out_path = "sweep.csv";
    sweep_cmd->add_option("--axis", axis_texts, "swept key, key=lo:hi:step or key=v1,v2,...")
        ->required();
    sweep_cmd->add_option("--methods", methods, "comma list of analytic,ref,mc");
    sweep_cmd->add_option("--out", out_path, "output CSV path");
    sweep_cmd->add_option("--trials", trials, "Monte-Carlo trials per grid point");
    sweep_cmd->add_option("--seed", seed, "base seed; per-point seeds derive from it");
    sweep_cmd->add_option("--workers", workers, "worker threads (affects wall time only)");
    sweep_cmd->add_option("--batch", batch, "trials per RNG substream chunk");

    // optimize
    auto* opt_cmd = app.add_subcommand("optimize", "maximize analytic SSCP over one key");
    CommonArgs opt_args;
    add_common(opt_cmd, opt_args);
    std::string opt_key = "h_u";
    double opt_lo = 50.0, opt_hi = 300.0;
    int opt_budget = 60;
    opt_cmd->add_option("--key", opt_key, "swept config key (h_u, eta, ...)");
    opt_cmd->add_option("--lo", opt_lo, "lower bound")->required();
    opt_cmd->add_option("--hi", opt_hi, "upper bound")->required();
    opt_cmd->add_option("--budget", opt_budget, "evaluation budget");

    // gridpos
    auto* grid_cmd = app.add_subcommand("gridpos", "analytic SSCP over a UAV position grid");
    CommonArgs grid_args;
    add_common(grid_cmd, grid_args);
    std::string grid_x = "-150:150:10", grid_y = "-150:150:10";
    std::string grid_out = "gridpos.csv";
    grid_cmd->add_option("--x", grid_x, "x range lo:hi:step");
    grid_cmd->add_option("--y", grid_y, "y range lo:hi:step");
    grid_cmd->add_option("--out", grid_out, "output CSV path");
    grid_cmd->add_option("--workers", workers, "worker threads (affects wall time only)");

    // validate
    auto* val_cmd = app.add_subcommand(
        "validate", "cross-check closed form against Monte-Carlo on a study preset");
    CommonArgs val_args;
    add_common(val_cmd, val_args);
    int figure = 3;
    std::string val_out;
    bool val_with_ref = false;
    val_cmd->add_option("--figure", figure, "study preset number, 3..7")->required();
    val_cmd->add_option("--trials", trials, "Monte-Carlo trials per grid point");
    val_cmd->add_option("--seed", seed, "base seed");
    val_cmd->add_option("--workers", workers, "worker threads (affects wall time only)");
    val_cmd->add_option("--batch", batch, "trials per RNG substream chunk");
    val_cmd->add_option("--out", val_out, "also write the sweep CSV here");
    val_cmd->add_flag("--with-ref", val_with_ref, "additionally run the reference integrator");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try {
        if (*eval_cmd) {
            const sscp::ScenarioConfig cfg = build_config(eval_args);
            if (eval_method == "analytic" || eval_method == "both") {
                const sscp::SscpEstimate e = sscp::sscp_analytic(cfg);
                std::printf("sscp_ana=%.9g method=%s raw=%.9g\n", e.clamped(),
                            sscp::method_name(e.method), e.value);
            }
            if (eval_method == "ref" || eval_method == "both") {
                const sscp::SscpEstimate e = sscp::sscp_ref(cfg);
                std::printf("sscp_ref=%.9g method=%s err_bound=%.3g\n", e.clamped(),
                            sscp::method_name(e.method), e.error_bound);
            }
            return exit_ok;
        }

        if (*sim_cmd) {
            const sscp::ScenarioConfig cfg = build_config(sim_args);
            sscp::McConfig mc{trials, seed, workers, batch};
            const sscp::SscpEstimate e = sscp::estimate_sscp(cfg, mc);
            std::printf("sscp_mc=%.9g stderr=%.9g trials=%llu seed=%llu\n", e.value, e.std_err,
                        static_cast<unsigned long long>(e.trials),
                        static_cast<unsigned long long>(e.seed));
            return exit_ok;
        }

        if (*sweep_cmd) {
            sscp::SweepSpec spec;
            spec.base = build_config(sweep_args);
            for (const auto& text : axis_texts) {
                const auto eq = text.find('=');
                if (eq == std::string::npos)
                    throw sscp::ConfigError("bad-axis", text, "--axis needs key=values");
                spec.axes.push_back(
                    {text.substr(0, eq), sscp::parse_axis_values(text.substr(eq + 1))});
            }
            spec.run_analytic = methods.find("analytic") != std::string::npos ||
                                methods.find("ana") != std::string::npos;
            spec.run_reference = methods.find("ref") != std::string::npos;
            spec.run_mc = methods.find("mc") != std::string::npos;
            spec.mc_trials = trials;
            spec.mc_batch = batch;
            spec.seed = seed;
            spec.workers = workers;
            const auto rows = sscp::run_sweep(spec);
            std::ostringstream csv;
            sscp::write_csv(csv, spec.axes, rows);
            write_file(out_path, csv.str());
            std::printf("wrote %zu rows to %s\n", rows.size(), out_path.c_str());
            return exit_ok;
        }

        if (*opt_cmd) {
            const sscp::ScenarioConfig cfg = build_config(opt_args);
            const sscp::OptimumResult r = sscp::optimize_scalar(cfg, opt_key, opt_lo, opt_hi,
                                                                opt_budget);
            std::printf("argmax %s=%.9g sscp=%.9g evals=%llu\n", opt_key.c_str(), r.arg, r.value,
                        static_cast<unsigned long long>(r.evals));
            return exit_ok;
        }

        if (*grid_cmd) {
            const sscp::ScenarioConfig cfg = build_config(grid_args);
            const auto xs = sscp::parse_axis_values(grid_x);
            const auto ys = sscp::parse_axis_values(grid_y);
            if (xs.empty() || ys.empty())
                throw sscp::ConfigError("bad-axis", "gridpos", "empty position range");
            sscp::PositionGrid g = sscp::grid_position(cfg, xs.front(), xs.back(), ys.front(),
                                                       ys.back(),
                                                       xs.size() > 1 ? xs[1] - xs[0] : 1.0,
                                                       workers);
            std::ostringstream csv;
            csv << "x_u,y_u,sscp_ana,sscp_ref,sscp_mc,mc_stderr,mc_trials,seed,err\n";
            for (std::size_t i = 0; i < g.xs.size(); ++i)
                for (std::size_t j = 0; j < g.ys.size(); ++j) {
                    char buf[128];
                    std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%.9g,,,,,,\n", g.xs[i], g.ys[j],
                                  g.value[i][j]);
                    csv << buf;
                }
            write_file(grid_out, csv.str());
            std::printf("argmax x_u=%.9g y_u=%.9g sscp=%.9g (wrote %s)\n", g.xs[g.best_i],
                        g.ys[g.best_j], g.best_value, grid_out.c_str());
            return exit_ok;
        }

        if (*val_cmd) {
            const FigurePlan plan = figure_plan(figure, val_args.configs_dir);
            CommonArgs load_args = val_args;
            if (load_args.config_path.empty()) load_args.config_path = plan.config_file;
            sscp::SweepSpec spec;
            spec.base = build_config(load_args);
            spec.axes = plan.axes;
            spec.run_analytic = true;
            spec.run_reference = val_with_ref;
            spec.run_mc = true;
            spec.mc_trials = trials;
            spec.mc_batch = batch;
            spec.seed = seed;
            spec.workers = workers;
            const auto rows = sscp::run_sweep(spec);
            if (!val_out.empty()) {
                std::ostringstream csv;
                sscp::write_csv(csv, spec.axes, rows);
                write_file(val_out, csv.str());
            }
            const bool ok = triangle_ok(rows, std::cout);
            return ok ? exit_ok : exit_tolerance;
        }
    } catch (const sscp::ConfigError& e) {
        std::fprintf(stderr, "error [%s] at %s: %s\n", e.code().c_str(), e.key().c_str(),
                     e.what());
        return exit_config;
    } catch (const sscp::ToleranceError& e) {
        std::fprintf(stderr, "error [tolerance-not-met]: %s (estimate %.9g, bound %.3g)\n",
                     e.what(), e.estimate(), e.bound());
        return exit_tolerance;
    } catch (const std::ios_base::failure& e) {
        std::fprintf(stderr, "error [io]: %s\n", e.what());
        return exit_io;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_config;
    }
    return exit_ok;
}
