#include "forge/rng.hpp"

#include <cstring>

namespace forge {

uint64_t fnv1a64(const void* data, size_t len, uint64_t h) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

uint64_t feed_u64(uint64_t h, uint64_t v) {
    unsigned char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(v >> (8 * i));
    return fnv1a64(bytes, 8, h);
}

}  // namespace

uint64_t stable_hash(uint64_t seed, std::string_view tag) {
    uint64_t h = feed_u64(14695981039346656037ULL, seed);
    return fnv1a64(tag.data(), tag.size(), h);
}

uint64_t stable_hash(uint64_t seed, std::string_view tag, uint64_t a) {
    return feed_u64(stable_hash(seed, tag), a);
}

uint64_t stable_hash(uint64_t seed, std::string_view tag, uint64_t a, uint64_t b) {
    return feed_u64(feed_u64(stable_hash(seed, tag), a), b);
}

uint64_t RngStream::next_below(uint64_t n) {
    if (n <= 1) return 0;
    uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
        uint64_t r = gen_();
        if (r >= threshold) return r % n;
    }
}

}  // namespace forge
