#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>

namespace vilcb {

/// Portable 64-bit pseudo-random generator (SplitMix64, Steele et al. 2014).
///
/// The generator is fully specified here so that identical seeds produce
/// identical streams on every platform and compiler; none of the sampling
/// helpers below rely on implementation-defined std:: distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound) without modulo bias.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0)
            throw std::invalid_argument("Rng::next_below: bound must be positive");
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold)
                return r % bound;
        }
    }

    bool next_bernoulli(double p) { return next_double() < p; }

    /// Draws an index from an unnormalized nonnegative weight vector by CDF walk.
    /// The final bucket absorbs any rounding slack in the running sum.
    int next_categorical(std::span<const double> weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        double u = next_double() * total;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            u -= weights[i];
            if (u < 0.0)
                return static_cast<int>(i);
        }
        return static_cast<int>(weights.size()) - 1;
    }

private:
    std::uint64_t state_;
};

/// Derives an independent stream seed from (base seed, operation tag, cell index).
/// FNV-1a over the tag, then two splitmix finalizer rounds to mix in base and
/// index; generation order across cells therefore has no effect on the draws.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view tag,
                                 std::uint64_t index = 0) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    Rng mixer(base ^ h);
    std::uint64_t first = mixer.next_u64();
    Rng mixer2(first ^ (index * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL));
    return mixer2.next_u64();
}

} // namespace vilcb
