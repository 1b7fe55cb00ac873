#pragma once

// Random sweeps over hypothesis-satisfying periodic systems.

#include "wolbachia/core_maps.hpp"
#include "wolbachia/periodic_analysis.hpp"
#include "wolbachia/scenario.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <exception>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace wolbachia {

class SweepError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class MuMode {
    MIXED,  // 0, mu* and values on the grid in [0, mu*], in proportions 1:1:3
    ZERO,
};

struct SweepOptions {
    int period_min = 2;
    int period_max = 2;
    long count = 1000;
    std::uint64_t seed = 42;
    long resolution = 1000;  // parameters are multiples of 1/resolution
    BigRational sf_lo = 0, sf_hi = 1;
    BigRational sh_lo = 0, sh_hi = 1;
    MuMode mu_mode = MuMode::MIXED;
    bool exclude_all_sf_zero = false;  // skip systems whose sf_n are all 0
    unsigned workers = 0;              // 0: hardware concurrency
};

namespace detail {

inline long grid_ceil(const BigRational& v, long d)
{
    BigRational scaled = v * d;
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    return q.get_si();
}

inline long grid_floor(const BigRational& v, long d)
{
    BigRational scaled = v * d;
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    return q.get_si();
}

}  // namespace detail

/// Draws one map with 0 <= sf < sh <= 1 and mu <= mu* by rejection on the 1/resolution grid.
inline MapParams sample_map(std::mt19937_64& rng, const SweepOptions& opt)
{
    const long d = opt.resolution;
    const long sh_min = std::max(1L, detail::grid_ceil(opt.sh_lo, d));
    const long sh_max = std::min(d, detail::grid_floor(opt.sh_hi, d));
    const long sf_min = std::max(0L, detail::grid_ceil(opt.sf_lo, d));
    const long sf_max = std::min(d - 1, detail::grid_floor(opt.sf_hi, d));
    if (sh_min > sh_max || sf_min > sf_max) throw SweepError("empty parameter range");
    std::uniform_int_distribution<long> sh_dist(sh_min, sh_max);
    std::uniform_int_distribution<long> sf_dist(sf_min, sf_max);
    std::uniform_int_distribution<int> mode_dist(0, 4);
    std::uniform_int_distribution<long> mu_dist(0, d / 4);

    for (int attempt = 0; attempt < 100000; ++attempt) {
        long k = sh_dist(rng);
        long j = sf_dist(rng);
        if (j >= k) continue;  // sf < sh is required
        BigRational sh = make_rational(k, d);
        BigRational sf = make_rational(j, d);
        BigRational star = mu_star(sf, sh);
        if (opt.mu_mode == MuMode::ZERO) return {BigRational(0), sf, sh};
        int mode = mode_dist(rng);
        if (mode == 0) return {BigRational(0), sf, sh};
        if (mode == 1) return {star, sf, sh};
        for (int tries = 0; tries < 64; ++tries) {
            BigRational mu = make_rational(mu_dist(rng), d);
            if (mu <= star) return {mu, sf, sh};
        }
    }
    throw SweepError("parameter ranges admit no 0 <= sf < sh <= 1");
}

inline PeriodicSystem sample_system(std::mt19937_64& rng, int period, const SweepOptions& opt)
{
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<MapParams> maps;
        for (int n = 0; n < period; ++n) maps.push_back(sample_map(rng, opt));
        if (opt.exclude_all_sf_zero &&
            std::all_of(maps.begin(), maps.end(), [](const auto& p) { return p.sf() == 0; }))
            continue;
        return PeriodicSystem(std::move(maps));
    }
    throw SweepError("could not sample a system with some sf > 0");
}

/// Deterministic per-index generator: the same (seed, index) always yields the same system.
inline std::mt19937_64 index_rng(std::uint64_t seed, long index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(static_cast<std::uint64_t>(index) >> 32)};
    return std::mt19937_64(seq);
}

inline PeriodicSystem sweep_system(const SweepOptions& opt, long index)
{
    auto rng = index_rng(opt.seed, index);
    std::uniform_int_distribution<int> period_dist(opt.period_min, opt.period_max);
    int t = period_dist(rng);
    return sample_system(rng, t, opt);
}

struct SweepViolation {
    long index = 0;
    int count_nonzero = 0;
    Scenario scenario;
};

struct SweepReport {
    long systems = 0;
    int max_count = 0;
    std::map<int, int> max_count_by_period;
    std::map<int, long> histogram;  // count_nonzero -> systems
    long unique_interior_failures = 0;   // T = 2, mu = 0 systems without exactly one fixed point in (0,1)
    long unique_interior_checked = 0;
    std::vector<SweepViolation> violations;
};

inline SweepReport run_sweep(const SweepOptions& opt)
{
    if (opt.count < 1) throw SweepError("count must be at least 1");
    if (opt.period_min < 1 || opt.period_max < opt.period_min) throw SweepError("bad period range");
    unsigned workers = opt.workers ? opt.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<long>(workers, opt.count));

    struct Partial {
        SweepReport report;
    };
    std::vector<Partial> partials(workers);
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](unsigned w) {
        try {
            auto& rep = partials[w].report;
            for (long i = w; i < opt.count; i += workers) {
                PeriodicSystem s = sweep_system(opt, i);
                BoundCheck b = check_conjecture_bound(s);
                ++rep.systems;
                ++rep.histogram[b.count_nonzero];
                rep.max_count = std::max(rep.max_count, b.count_nonzero);
                auto& m = rep.max_count_by_period[s.period()];
                m = std::max(m, b.count_nonzero);
                if (b.unique_interior) {
                    ++rep.unique_interior_checked;
                    if (!*b.unique_interior) ++rep.unique_interior_failures;
                }
                if (!b.bound_satisfied)
                    rep.violations.push_back({i, b.count_nonzero, scenario_from_system(s, "violation-" + std::to_string(i))});
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    SweepReport out;
    for (auto& p : partials) {
        auto& r = p.report;
        out.systems += r.systems;
        out.max_count = std::max(out.max_count, r.max_count);
        for (auto [t, m] : r.max_count_by_period) out.max_count_by_period[t] = std::max(out.max_count_by_period[t], m);
        for (auto [c, n] : r.histogram) out.histogram[c] += n;
        out.unique_interior_checked += r.unique_interior_checked;
        out.unique_interior_failures += r.unique_interior_failures;
        for (auto& v : r.violations) out.violations.push_back(std::move(v));
    }
    std::sort(out.violations.begin(), out.violations.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
    return out;
}

}  // namespace wolbachia
