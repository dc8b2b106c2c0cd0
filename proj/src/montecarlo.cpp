#include "sscp/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

namespace sscp {

SimContext make_sim_context(const ScenarioConfig& cfg) {
    SimContext ctx;
    ctx.derived = derive_scenario(cfg);
    ctx.fade_fu = {cfg.m, cfg.xi.fu};
    ctx.fade_nu = {cfg.m, cfg.xi.nu};
    ctx.fade_fe = {cfg.m, cfg.xi.fe};
    ctx.fade_ne = {cfg.m, cfg.xi.ne};
    ctx.far_count = cfg.far_count;
    ctx.near_count = cfg.near_count;
    ctx.W = cfg.W;
    return ctx;
}

ChannelDraw draw_channels(const SimContext& ctx, PhiloxStream& rng) {
    ChannelDraw d;
    d.a = sample_best_of(ctx.far_count, ctx.fade_fu, rng);
    d.b = sample_best_of(ctx.near_count, ctx.fade_nu, rng);
    d.x = sample_channel_power(ctx.fade_fe, rng);
    d.y = sample_channel_power(ctx.fade_ne, rng);
    return d;
}

SecrecySnapshot simulate_once(const SimContext& ctx, PhiloxStream& rng) {
    const ChannelDraw draw = draw_channels(ctx, rng);
    const FourSinr s = sinrs(ctx.derived.z, draw);
    SecrecySnapshot snap = capacities_and_secrecy(s, ctx.derived.timing, ctx.W);
    success_event(snap, ctx.derived.thr, ctx.derived.timing);
    return snap;
}

SecrecySnapshot simulate_once(const ScenarioConfig& cfg, PhiloxStream& rng) {
    const SimContext ctx = make_sim_context(cfg);
    return simulate_once(ctx, rng);
}

SscpEstimate estimate_sscp(const ScenarioConfig& cfg, const McConfig& mc) {
    if (mc.trials < 1) throw ConfigError("trial-count", "mc.trials", "trials must be >= 1");
    const std::uint64_t batch = mc.batch < 1 ? 1 : mc.batch;
    const SimContext ctx = make_sim_context(cfg);

    const std::uint64_t chunks = (mc.trials + batch - 1) / batch;
    std::vector<std::uint64_t> successes(chunks, 0);

    auto run_chunk = [&](std::uint64_t c) {
        const std::uint64_t begin = c * batch;
        const std::uint64_t end = std::min(begin + batch, mc.trials);
        PhiloxStream rng(mc.seed, c);
        std::uint64_t hits = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
            hits += simulate_once(ctx, rng).success ? 1 : 0;
        }
        successes[c] = hits;
    };

    unsigned workers = mc.workers > 0 ? static_cast<unsigned>(mc.workers)
                                      : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
    if (workers <= 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::uint64_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1))
                    run_chunk(c);
            });
        }
        for (auto& t : pool) t.join();
    }

    std::uint64_t hits = 0;
    for (std::uint64_t c = 0; c < chunks; ++c) hits += successes[c]; // fixed fold order

    SscpEstimate est;
    est.method = Method::MonteCarlo;
    est.trials = mc.trials;
    est.seed = mc.seed;
    est.value = static_cast<double>(hits) / static_cast<double>(mc.trials);
    est.std_err = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(mc.trials));
    return est;
}

} // namespace sscp
