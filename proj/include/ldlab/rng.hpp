#ifndef LDLAB_RNG_HPP
#define LDLAB_RNG_HPP

#include <cstdint>
#include <random>

namespace ldlab {

/// Seedable RNG wrapper. All randomized operations take one of these explicitly;
/// there is no ambient randomness anywhere in the library.
///
/// Bounded draws use masked rejection on raw 64-bit outputs instead of
/// std::uniform_int_distribution, whose output is not pinned by the standard.
/// This keeps (config, seed) -> output byte-reproducible across toolchains.
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(mix(seed)) {}

    /// Per-trial substream: trial i is reproducible in isolation from (master, i).
    static Rng substream(uint64_t master, uint64_t index) {
        return Rng(mix(master + 0x9e3779b97f4a7c15ULL * (index + 1)));
    }

    uint64_t next() { return gen_(); }

    /// Uniform value in [0, n). n must be nonzero.
    uint64_t below(uint64_t n) {
        uint64_t mask = ~uint64_t{0};
        if (n > 1) {
            mask >>= __builtin_clzll(n - 1);
        } else {
            return 0;
        }
        uint64_t v;
        do {
            v = gen_() & mask;
        } while (v >= n);
        return v;
    }

    bool coin() { return gen_() & 1; }

  private:
    // splitmix64 finalizer; decorrelates consecutive seeds.
    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 gen_;
};

}  // namespace ldlab

#endif
