#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace itrail {

// 64-bit mixing finalizer (the SplitMix64 output function). Used both as the
// engine step and to derive child stream keys.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// SplitMix64 generator. Tiny state, full 64-bit seed, reproducible across
// platforms; every random decision in the library flows through this engine.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix64(state_);
    }

    // Uniform double in [0, 1), 53-bit resolution.
    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform double in (0, 1); never returns 0, safe as a log() argument.
    double u01_open() {
        return (static_cast<double>(next() >> 12) + 0.5) * 0x1.0p-52;
    }

    // Unbiased integer in [0, bound) via Lemire's multiply-and-reject.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("SplitMix64::below: bound must be positive");
        using u128 = unsigned __int128;
        std::uint64_t x = next();
        u128 m = static_cast<u128>(x) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            std::uint64_t threshold = -bound % bound;
            while (lo < threshold) {
                x = next();
                m = static_cast<u128>(x) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    std::uint32_t below32(std::uint32_t bound) {
        return static_cast<std::uint32_t>(below(bound));
    }

private:
    std::uint64_t state_;
};

// Stream identifiers for the fixed modules, so that different consumers of the
// same root seed never share a stream.
namespace stream {
inline constexpr std::uint64_t gnp = 1;
inline constexpr std::uint64_t gnm = 2;
inline constexpr std::uint64_t ordering = 3;
inline constexpr std::uint64_t real_labels = 4;
inline constexpr std::uint64_t tree_trial = 5;
inline constexpr std::uint64_t harness = 6;
inline constexpr std::uint64_t worst_case = 7;
inline constexpr std::uint64_t stitching = 8;
inline constexpr std::uint64_t diagnostics = 9;
}  // namespace stream

// Splittable seed: a 64-bit root plus a derivation path. Children derived
// with distinct path components own statistically independent streams, so
// parallel trials are reproducible no matter how they are scheduled.
struct Seed {
    std::uint64_t root_seed = 0;
    std::vector<std::uint64_t> path;

    Seed() = default;
    explicit Seed(std::uint64_t root) : root_seed(root) {}

    Seed child(std::uint64_t id) const {
        Seed s = *this;
        s.path.push_back(id);
        return s;
    }

    Seed child(std::uint64_t a, std::uint64_t b) const { return child(a).child(b); }

    // Folds root and path into a single stream key.
    std::uint64_t key() const {
        std::uint64_t k = mix64(root_seed ^ 0x6a09e667f3bcc909ull);
        for (std::uint64_t id : path) k = mix64(k ^ (id + 0x9e3779b97f4a7c15ull));
        return k;
    }

    SplitMix64 stream() const { return SplitMix64(key()); }
};

}  // namespace itrail
