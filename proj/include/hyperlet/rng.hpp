#pragma once

#include <cstdint>
#include <vector>

namespace hyperlet {

/// SplitMix64: tiny, seedable, portable generator. All randomized code in the
/// library draws from this type so that results are bit-reproducible across
/// platforms and standard-library implementations.
///
/// Stream contract (relied upon by replay oracles): bounded(n) consumes exactly
/// one next() and reduces it modulo n; next_double() consumes one next() and
/// maps the top 53 bits into [0,1).
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t bounded(std::uint64_t n) { return next() % n; }

    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

/// Derives an independent substream for a (row, column) pair. Used to make
/// per-entry randomized computations (random-walk kernels, candidate sampling)
/// independent of evaluation order and thread schedule.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    SplitMix64 g(seed);
    SplitMix64 h(g.next() ^ (a * 0x9E3779B97F4A7C15ull + 0x7F4A7C15ull));
    SplitMix64 k(h.next() ^ (b * 0xBF58476D1CE4E5B9ull + 0x94D049BB133111EBull));
    return k.next();
}

/// Fisher-Yates shuffle driven by SplitMix64 (std::shuffle is not
/// reproducible across standard libraries).
template <class T>
void shuffle(std::vector<T>& items, SplitMix64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.bounded(i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace hyperlet
