#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace noisyrgbd {

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

/// SplitMix64 finalizer. Bijective 64-bit mix with full avalanche.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t absorb(std::uint64_t h, std::uint64_t x) {
    return mix64(h ^ mix64(x));
}

}  // namespace detail

inline constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (char c : s) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001B3ull;
    }
    return h;
}

/// Key addressing one independent random stream. Streams are derived purely
/// from the key, so frames can be processed in any order (or in parallel)
/// with bit-identical results.
struct RngKey {
    std::uint64_t seed = 0;
    std::uint64_t sequence = 0;  // fnv1a64 of the sequence id
    std::uint64_t frame = 0;
    std::uint64_t op = 0;

    static RngKey make(std::uint64_t seed, std::string_view sequence_id, std::uint64_t frame,
                       std::uint64_t op) {
        return RngKey{seed, fnv1a64(sequence_id), frame, op};
    }

    RngKey with_frame(std::uint64_t f) const { return RngKey{seed, sequence, f, op}; }
    RngKey with_op(std::uint64_t o) const { return RngKey{seed, sequence, frame, o}; }

    /// Derives a sub-key for an independent lane within the same operation
    /// (e.g. severity jitter vs. pixel noise).
    RngKey child(std::uint64_t salt) const {
        return RngKey{seed, sequence, frame, detail::absorb(op, salt ^ 0xA5A5A5A5A5A5A5A5ull)};
    }

    std::uint64_t digest() const {
        std::uint64_t h = detail::absorb(0x243F6A8885A308D3ull, seed);
        h = detail::absorb(h, sequence);
        h = detail::absorb(h, frame);
        return detail::absorb(h, op);
    }
};

/// Counter-based stream: draw i is mix64(key + i * golden). No hidden state
/// beyond the counter, so identical keys always reproduce identical draws.
/// Distributions are implemented explicitly (Box-Muller, Knuth) instead of
/// <random> ones, whose outputs differ across standard libraries.
class RngStream {
public:
    explicit RngStream(const RngKey& key) : state_(key.digest()) {}

    std::uint64_t next_u64() {
        state_ += detail::kGolden;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t uniform_int(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    /// Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(uniform_int(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    /// Standard normal via Box-Muller; the paired draw is cached.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - next_double();  // (0, 1]
        double u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

    /// Poisson sample via Knuth's product method, chunked so exp(-lambda)
    /// stays in normal double range.
    std::uint64_t poisson(double lambda) {
        std::uint64_t total = 0;
        while (lambda > 500.0) {
            total += poisson_knuth(500.0);
            lambda -= 500.0;
        }
        return total + poisson_knuth(lambda);
    }

private:
    std::uint64_t poisson_knuth(double lambda) {
        if (lambda <= 0.0) return 0;
        const double limit = std::exp(-lambda);
        std::uint64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= next_double();
        } while (p > limit);
        return k - 1;
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace noisyrgbd
