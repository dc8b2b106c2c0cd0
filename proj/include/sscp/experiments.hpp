#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sscp/montecarlo.hpp"
#include "sscp/sysmodel.hpp"
#include "sscp/types.hpp"

namespace sscp {

// One swept config key and the values it takes.
struct AxisSpec {
    std::string key;
    std::vector<double> values;
};

// Parses "lo:hi:step" (inclusive grid) or "v1,v2,v3".
std::vector<double> parse_axis_values(const std::string& text);

// A full parameter study: the Cartesian grid of the axes (first axis
// slowest), evaluated with the selected methods. Per-point Monte-Carlo seeds
// derive from (seed, point index), so results never depend on evaluation
// order or worker count.
struct SweepSpec {
    ScenarioConfig base;
    std::vector<AxisSpec> axes;
    bool run_analytic = true;
    bool run_reference = false;
    bool run_mc = true;
    std::uint64_t mc_trials = 1'000'000;
    std::uint64_t mc_batch = 65536;
    std::uint64_t seed = 1;
    int workers = 0; // 0 = hardware concurrency
};

struct SweepRow {
    std::vector<double> coords;
    std::optional<double> ana;       // raw analytic value
    std::optional<double> ref;
    std::optional<double> mc;
    double mc_stderr = 0.0;
    std::uint64_t mc_trials = 0;
    std::uint64_t seed = 0;
    std::string err;                 // validation/evaluation error code, empty if ok
    Method ana_method = Method::Lemma1;
    double wall_ana = 0.0, wall_ref = 0.0, wall_mc = 0.0; // [s], not serialized
};

// Evaluates the grid. Invalid grid points produce a row with `err` set, never
// an abort. Throws empty-sweep when an axis has no values.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// CSV with header `<axis...>,sscp_ana,sscp_ref,sscp_mc,mc_stderr,mc_trials,
// seed,err`; floats at 9 significant digits, missing methods as empty fields.
void write_csv(std::ostream& out, const std::vector<AxisSpec>& axes,
               const std::vector<SweepRow>& rows);

struct OptimumResult {
    double arg = 0.0;
    double value = 0.0;
    std::uint64_t evals = 0;
};

// Maximizes the analytic SSCP over one config key: a coarse scan of budget/2
// points, then golden-section refinement in the best bracket. Ties prefer
// the smaller argument. Keys: any numeric config key, typically h_u or eta.
OptimumResult optimize_scalar(const ScenarioConfig& cfg, const std::string& key, double lo,
                              double hi, int budget = 60);

struct PositionGrid {
    std::vector<double> xs, ys;
    std::vector<std::vector<double>> value; // value[i][j] at (xs[i], ys[j])
    std::size_t best_i = 0, best_j = 0;
    double best_value = 0.0;
};

// Analytic SSCP over a UAV position grid at fixed altitude; step > 0,
// inclusive ranges. Evaluated in parallel, assembled in grid order.
PositionGrid grid_position(const ScenarioConfig& cfg, double x0, double x1, double y0, double y1,
                           double step, int workers = 0);

} // namespace sscp
