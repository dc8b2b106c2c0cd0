#pragma once

#include "sscp/protocol.hpp"
#include "sscp/rng.hpp"
#include "sscp/types.hpp"

namespace sscp {

// Estimator knobs. `batch` is the substream chunk size: trial i belongs to
// chunk i/batch, which runs on the Philox substream (seed, chunk). The result
// is a function of (seed, trials, batch) only - workers never change it.
struct McConfig {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    int workers = 0; // 0 = hardware concurrency
    std::uint64_t batch = 65536;
};

// Scenario constants shared by every trial.
struct SimContext {
    DerivedScenario derived;
    FadingSpec fade_fu, fade_nu, fade_fe, fade_ne;
    int far_count = 1, near_count = 1;
    double W = 0.0;
};

SimContext make_sim_context(const ScenarioConfig& cfg);

// Channel powers of one protocol round, in a fixed draw order: K far uplink
// gains, Q near uplink gains (best of each kept), then the selected devices'
// eavesdropper legs x, y.
ChannelDraw draw_channels(const SimContext& ctx, PhiloxStream& rng);

// One end-to-end protocol round: harvest-and-select, uplink SINRs,
// capacities, secrecy, offload deadline, joint success event.
SecrecySnapshot simulate_once(const SimContext& ctx, PhiloxStream& rng);
SecrecySnapshot simulate_once(const ScenarioConfig& cfg, PhiloxStream& rng);

// Success-rate estimate over mc.trials rounds. Bit-identical for identical
// (seed, trials, batch) regardless of worker count.
SscpEstimate estimate_sscp(const ScenarioConfig& cfg, const McConfig& mc);

} // namespace sscp
