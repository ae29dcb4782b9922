#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace forge {

// FNV-1a over raw bytes. Used to derive sub-stream seeds from
// (user seed, tag, indices); stable across platforms and runs.
uint64_t fnv1a64(const void* data, size_t len, uint64_t h = 14695981039346656037ULL);

uint64_t stable_hash(uint64_t seed, std::string_view tag);
uint64_t stable_hash(uint64_t seed, std::string_view tag, uint64_t a);
uint64_t stable_hash(uint64_t seed, std::string_view tag, uint64_t a, uint64_t b);

// Seeded random stream with fully specified mappings. std::mt19937_64 output
// is pinned by the standard; the unit-interval and bounded-int mappings below
// are hand-written because std::uniform_*_distribution is implementation
// defined and would break byte-identical output across toolchains.
class RngStream {
public:
    explicit RngStream(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    // Uniform in [0,1), 53-bit resolution.
    double next_unit() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Uniform in [0,n), exact (rejection sampling).
    uint64_t next_below(uint64_t n);

private:
    std::mt19937_64 gen_;
};

// In-place Fisher-Yates; std::shuffle's algorithm is unspecified.
template <typename T>
void deterministic_shuffle(std::vector<T>& items, RngStream& rng) {
    for (size_t i = items.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(rng.next_below(i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace forge
