// Seeded randomness for the noise and timing-jitter models.
//
// Reproducibility contract: the generator is std::mt19937_64 (bit-exact
// output by the C++ standard) and all mappings from raw 64-bit draws to
// doubles/integers are spelled out here rather than delegated to
// std::*_distribution, whose algorithms vary between standard library
// implementations. Identical (seed, call sequence) therefore yields
// identical streams on any conforming platform.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace dtmf {

// splitmix64 step (Steele, Lea, Flood). Used to whiten seeds and to
// derive independent per-trial seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Independent stream seed for trial `index` under `master`. Trials of a
// Monte Carlo sweep use derive_seed(master, t) so parallel and serial
// executions see the same per-trial streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ (0xA0761D6478BD642FULL + index * 0xE7037ED1A0B428DBULL);
    return splitmix64(s);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform on (0, 1]; never returns 0 so it is safe under log().
    double uniform01() {
        return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via the Box-Muller transform, one pair per two calls.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    // Uniform integer on [lo, hi] via 128-bit multiply-shift of one raw
    // draw (bias < span/2^64, far below anything observable here).
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        const auto v = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(gen_()) * span) >> 64);
        return lo + static_cast<std::int64_t>(v);
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace dtmf
