#include "sscp/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <thread>

#include "sscp/analytic.hpp"
#include "sscp/refintegral.hpp"

namespace sscp {

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

// Runs fn(i) for i in [0, count) on `workers` threads; work items are
// independent and land in caller-indexed slots, so scheduling cannot change
// results.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
    unsigned n = workers > 0 ? static_cast<unsigned>(workers)
                             : std::max(1u, std::thread::hardware_concurrency());
    n = static_cast<unsigned>(std::min<std::size_t>(n, count));
    if (n <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned w = 0; w < n; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

std::string format_g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

} // namespace

std::vector<double> parse_axis_values(const std::string& text) {
    std::vector<double> out;
    const auto c1 = text.find(':');
    if (c1 != std::string::npos) {
        const auto c2 = text.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw ConfigError("bad-axis", text, "axis range must be lo:hi:step");
        const double lo = std::stod(text.substr(0, c1));
        const double hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        const double step = std::stod(text.substr(c2 + 1));
        if (!(step > 0.0)) throw ConfigError("bad-axis", text, "axis step must be > 0");
        // inclusive grid, robust to step rounding
        const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
        for (int i = 0; i < count; ++i) out.push_back(lo + i * step);
        return out;
    }
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                            : comma - pos);
        if (!tok.empty()) out.push_back(std::stod(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    if (spec.axes.empty()) throw ConfigError("empty-sweep", "axes", "sweep needs at least one axis");
    for (const auto& ax : spec.axes) {
        if (ax.values.empty())
            throw ConfigError("empty-sweep", ax.key, "axis " + ax.key + " has no values");
        ScenarioConfig probe = spec.base; // resolves the key, throws unknown-key
        apply_override(probe, ax.key, ax.values.front());
    }
    if (!spec.run_analytic && !spec.run_reference && !spec.run_mc)
        throw ConfigError("no-method", "methods", "select at least one evaluation method");

    std::size_t total = 1;
    for (const auto& ax : spec.axes) total *= ax.values.size();

    std::vector<SweepRow> rows(total);
    parallel_for(total, spec.workers, [&](std::size_t idx) {
        SweepRow& row = rows[idx];
        // first axis slowest
        std::size_t rem = idx;
        std::vector<std::size_t> sub(spec.axes.size());
        for (std::size_t a = spec.axes.size(); a-- > 0;) {
            sub[a] = rem % spec.axes[a].values.size();
            rem /= spec.axes[a].values.size();
        }
        ScenarioConfig cfg = spec.base;
        row.coords.resize(spec.axes.size());
        for (std::size_t a = 0; a < spec.axes.size(); ++a) {
            row.coords[a] = spec.axes[a].values[sub[a]];
            apply_override(cfg, spec.axes[a].key, row.coords[a]);
        }
        try {
            validate_config(cfg);
            if (spec.run_analytic) {
                const double t0 = now_seconds();
                const SscpEstimate e = sscp_analytic(cfg);
                row.ana = e.value;
                row.ana_method = e.method;
                row.wall_ana = now_seconds() - t0;
            }
            if (spec.run_reference) {
                const double t0 = now_seconds();
                row.ref = sscp_ref(cfg).value;
                row.wall_ref = now_seconds() - t0;
            }
            if (spec.run_mc) {
                const double t0 = now_seconds();
                McConfig mc;
                mc.trials = spec.mc_trials;
                mc.batch = spec.mc_batch;
                mc.seed = mix_seed(spec.seed, idx);
                mc.workers = 1; // grid points already run in parallel
                const SscpEstimate e = estimate_sscp(cfg, mc);
                row.mc = e.value;
                row.mc_stderr = e.std_err;
                row.mc_trials = e.trials;
                row.seed = e.seed;
                row.wall_mc = now_seconds() - t0;
            }
        } catch (const ConfigError& e) {
            row.err = e.code();
        } catch (const ToleranceError&) {
            row.err = "tolerance-not-met";
        }
    });
    return rows;
}

void write_csv(std::ostream& out, const std::vector<AxisSpec>& axes,
               const std::vector<SweepRow>& rows) {
    for (const auto& ax : axes) out << ax.key << ',';
    out << "sscp_ana,sscp_ref,sscp_mc,mc_stderr,mc_trials,seed,err\n";
    for (const auto& row : rows) {
        for (const double c : row.coords) out << format_g9(c) << ',';
        if (row.ana) out << format_g9(*row.ana);
        out << ',';
        if (row.ref) out << format_g9(*row.ref);
        out << ',';
        if (row.mc) out << format_g9(*row.mc);
        out << ',';
        if (row.mc) out << format_g9(row.mc_stderr);
        out << ',';
        if (row.mc) out << row.mc_trials;
        out << ',';
        if (row.mc) out << row.seed;
        out << ',' << row.err << '\n';
    }
}

OptimumResult optimize_scalar(const ScenarioConfig& cfg, const std::string& key, double lo,
                              double hi, int budget) {
    if (!(hi > lo)) throw ConfigError("degenerate-bounds", key, "need lo < hi");
    budget = std::max(budget, 8);

    OptimumResult best;
    best.arg = lo;
    best.value = -1.0;

    auto eval = [&](double x) {
        ScenarioConfig c = cfg;
        apply_override(c, key, x);
        validate_config(c);
        ++best.evals;
        return sscp_analytic(c).value;
    };
    auto consider = [&](double x, double v) {
        // strict improvement only: ties keep the smallest argument seen first
        if (v > best.value || (v == best.value && x < best.arg)) {
            best.value = v;
            best.arg = x;
        }
    };

    const int coarse = std::max(3, budget / 2);
    std::vector<double> xs(coarse), vs(coarse);
    int best_i = 0;
    for (int i = 0; i < coarse; ++i) {
        xs[i] = lo + (hi - lo) * i / (coarse - 1);
        vs[i] = eval(xs[i]);
        consider(xs[i], vs[i]);
        if (vs[i] > vs[best_i]) best_i = i;
    }

    // golden-section refinement inside the bracket around the best coarse point
    double a = xs[std::max(0, best_i - 1)];
    double b = xs[std::min(coarse - 1, best_i + 1)];
    const double gr = 0.6180339887498949;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = eval(c), fd = eval(d);
    consider(c, fc);
    consider(d, fd);
    int remaining = budget - coarse - 2;
    while (remaining-- > 0 && (b - a) > 1e-12 * (hi - lo)) {
        if (fc >= fd) { // keep the left bracket on ties: smaller-argument rule
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = eval(c);
            consider(c, fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = eval(d);
            consider(d, fd);
        }
    }
    return best;
}

PositionGrid grid_position(const ScenarioConfig& cfg, double x0, double x1, double y0, double y1,
                           double step, int workers) {
    if (!(step > 0.0)) throw ConfigError("bad-axis", "step", "grid step must be > 0");
    PositionGrid g;
    for (double x = x0; x <= x1 + 1e-9 * step; x += step) g.xs.push_back(x);
    for (double y = y0; y <= y1 + 1e-9 * step; y += step) g.ys.push_back(y);
    if (g.xs.empty()) g.xs.push_back(x0);
    if (g.ys.empty()) g.ys.push_back(y0);

    g.value.assign(g.xs.size(), std::vector<double>(g.ys.size(), 0.0));
    const std::size_t total = g.xs.size() * g.ys.size();
    parallel_for(total, workers, [&](std::size_t idx) {
        const std::size_t i = idx / g.ys.size(), j = idx % g.ys.size();
        ScenarioConfig c = cfg;
        c.uav.x = g.xs[i];
        c.uav.y = g.ys[j];
        validate_config(c);
        g.value[i][j] = sscp_analytic(c).value;
    });

    g.best_value = g.value[0][0];
    for (std::size_t i = 0; i < g.xs.size(); ++i)
        for (std::size_t j = 0; j < g.ys.size(); ++j)
            if (g.value[i][j] > g.best_value) {
                g.best_value = g.value[i][j];
                g.best_i = i;
                g.best_j = j;
            }
    return g;
}

} // namespace sscp
