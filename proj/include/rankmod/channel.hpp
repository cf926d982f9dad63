#pragma once

#include <chrono>
#include <thread>
#include <vector>

#include "rankmod/decoder.hpp"
#include "rankmod/metrics.hpp"
#include "rankmod/ranking.hpp"

namespace rankmod {

// Monte-Carlo bounded-noise channel.  Every trial derives its own generator
// from (seed, trial index) with a counter-based mix, so reports are identical
// for any worker count.

struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t s) : state(s) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform value in [0, bound)
    uint64_t below(uint64_t bound) { return next() % bound; }
};

inline SplitMix64 trial_rng(uint64_t seed, uint64_t trial) {
    SplitMix64 mix(seed ^ (0x517cc1b727220a95ull * (trial + 1)));
    mix.next();
    return mix;
}

// Random permutation tau with d_inf(sigma, tau) <= magnitude: proposes value
// swaps bounded by the magnitude and accepts those that keep the global bound.
// The distribution is not uniform over the ball; every output satisfies the
// bound by construction.
inline Permutation sample_bounded_error(const Permutation& sigma, int magnitude, SplitMix64& rng) {
    const int n = sigma.size();
    if (magnitude < 0 || magnitude >= n)
        throw std::invalid_argument("sample_bounded_error: need 0 <= magnitude < n");
    std::vector<uint8_t> tau = sigma.image();
    if (magnitude == 0) return Permutation::unchecked(std::move(tau));
    const int proposals = 4 * n;
    for (int t = 0; t < proposals; ++t) {
        const int u = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
        const int v = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
        if (u == v) continue;
        const int a = tau[static_cast<size_t>(u)], b = tau[static_cast<size_t>(v)];
        if (std::abs(a - b) > magnitude) continue;
        if (std::abs(b - sigma(u + 1)) > magnitude || std::abs(a - sigma(v + 1)) > magnitude)
            continue;
        std::swap(tau[static_cast<size_t>(u)], tau[static_cast<size_t>(v)]);
    }
    return Permutation::unchecked(std::move(tau));
}

struct SimConfig {
    CodeParams params;
    uint64_t trials = 10000;
    int noise_magnitude = 1;  // may exceed the decoding radius
    uint64_t seed = 1;
    unsigned workers = 1;
};

struct SimReport {
    uint64_t trials = 0;
    uint64_t successes = 0;
    uint64_t decode_failures = 0;  // structural failures (no output)
    uint64_t wrong_codeword = 0;   // decoded to a different codeword
    double wallclock_seconds = 0.0;

    double success_rate() const {
        return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
    }
};

// Per trial: draw a uniform rank, unrank it, add bounded noise, decode, and
// compare.  Requires the rankable variant (codewords are drawn via unrank).
inline SimReport simulate(const SimConfig& cfg, const LmrmCode& code) {
    const auto t0 = std::chrono::steady_clock::now();
    const RankableCode rankable(code);
    const Decoder decoder(code);
    const uint64_t total = rankable.total();
    unsigned workers = cfg.workers ? cfg.workers : 1;
    if (workers > 64) workers = 64;

    std::vector<uint64_t> ok(workers, 0), hard(workers, 0), wrong(workers, 0);
    auto run = [&](unsigned w) {
        for (uint64_t trial = w; trial < cfg.trials; trial += workers) {
            SplitMix64 rng = trial_rng(cfg.seed, trial);
            const uint64_t m = rng.below(total);
            const Permutation sigma = rankable.unrank(m);
            const Permutation tau = sample_bounded_error(sigma, cfg.noise_magnitude, rng);
            const auto decoded = decoder.decode(tau);
            if (!decoded) ++hard[w];
            else if (*decoded == sigma) ++ok[w];
            else ++wrong[w];
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    SimReport rep;
    rep.trials = cfg.trials;
    for (unsigned w = 0; w < workers; ++w) {
        rep.successes += ok[w];
        rep.decode_failures += hard[w];
        rep.wrong_codeword += wrong[w];
    }
    rep.wallclock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace rankmod
