#pragma once

#include <cmath>
#include <cstdint>

namespace optomech {

// Seed expander. Successive next() values initialize generator state so that
// nearby master seeds still give well-separated streams.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

// xoshiro256++ core generator: fast, 256-bit state, equidistributed well
// beyond what the simulations here consume.
struct Xoshiro256pp {
    std::uint64_t s[4];

    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s) w = sm.next();
    }

    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s[0] + s[3], 23) + s[0];
        const std::uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }
};

// Standard normal deviates by the Marsaglia polar method. The spare deviate
// is cached, so draw order is deterministic for a fixed seed regardless of
// how many deviates each step consumes.
struct NormalSampler {
    Xoshiro256pp gen;
    bool have_spare = false;
    double spare = 0.0;

    explicit NormalSampler(std::uint64_t seed) : gen(seed) {}

    double operator()() {
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        double u, v, q;
        do {
            u = 2.0 * gen.uniform() - 1.0;
            v = 2.0 * gen.uniform() - 1.0;
            q = u * u + v * v;
        } while (q >= 1.0 || q == 0.0);
        const double f = std::sqrt(-2.0 * std::log(q) / q);
        spare = v * f;
        have_spare = true;
        return u * f;
    }
};

}  // namespace optomech
