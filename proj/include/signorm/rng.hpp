#ifndef SIGNORM_RNG_HPP
#define SIGNORM_RNG_HPP

#include <cmath>
#include <cstdint>

namespace signorm {

// SplitMix64 finalizer (Steele, Lea, Flood 2014 / Vigna 2015).
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)) * UINT64_C(0x94D049BB133111EB);
    return z ^ (z >> 31);
}

// Counter-based splittable generator. Stream r of a given seed is an
// independent sequence; output i is a pure function of (seed, stream, i),
// so replicates can be fanned out to workers without shared state.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : key_(mix64(seed + UINT64_C(0x9E3779B97F4A7C15) * mix64(stream + UINT64_C(0x6A09E667F3BCC909)))),
          counter_(0) {}

    std::uint64_t next_u64() {
        counter_ += UINT64_C(0x9E3779B97F4A7C15);
        return mix64(key_ ^ counter_);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Marsaglia polar method; one spare kept across calls.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * next_uniform() - 1.0;
            v = 2.0 * next_uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace signorm

#endif
