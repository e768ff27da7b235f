#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

namespace sagecut {

// 64-bit finalizer (splitmix64). Also serves as the degree-based-hashing mix.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic RNG with hand-rolled distributions so output streams are
// identical across platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in (0, 1]; safe to pass through log().
    double next_open_double() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Unbiased uniform integer in [0, n). n must be positive.
    std::uint64_t next_below(std::uint64_t n) noexcept {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Standard normal via Box-Muller, caching the second value.
    double next_gaussian() noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u = next_open_double();
        const double v = next_double();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double theta = 2.0 * 3.14159265358979323846 * v;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    bool next_bool() noexcept { return (next_u64() & 1u) != 0; }

    template <typename T>
    void shuffle(std::vector<T>& xs) noexcept {
        for (std::size_t i = xs.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(xs[i - 1], xs[j]);
        }
    }

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

namespace detail {
constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}
}  // namespace detail

// Named substreams: all randomness in the tool flows from one base seed,
// forked by (tag, index...) so independent components never share a stream.
inline std::uint64_t substream(std::uint64_t seed, std::string_view tag) {
    return mix64(seed ^ detail::fnv1a64(tag));
}
inline std::uint64_t substream(std::uint64_t seed, std::string_view tag, std::uint64_t a) {
    return mix64(substream(seed, tag) ^ mix64(a + 0x9e3779b97f4a7c15ULL));
}
inline std::uint64_t substream(std::uint64_t seed, std::string_view tag, std::uint64_t a,
                               std::uint64_t b) {
    return mix64(substream(seed, tag, a) ^ mix64(b + 0x2545f4914f6cdd1dULL));
}

}  // namespace sagecut
