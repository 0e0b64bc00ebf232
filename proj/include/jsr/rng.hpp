#pragma once

#include <cstdint>
#include <random>

namespace jsr {

using RngEngine = std::mt19937_64;

// splitmix64 finalizer (Steele, Lea, Flood 2014); bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Counter-based sub-stream key: the master seed and up to three stream ids
// (e.g. measurement count, sensor count, trial index) are folded through
// splitmix64. Streams derived this way do not depend on the order in which
// other streams are consumed.
constexpr std::uint64_t stream_key(std::uint64_t master, std::uint64_t id0 = 0,
                                   std::uint64_t id1 = 0, std::uint64_t id2 = 0) {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ id0);
    h = splitmix64(h ^ id1);
    h = splitmix64(h ^ id2);
    return h;
}

inline RngEngine make_stream(std::uint64_t master, std::uint64_t id0 = 0,
                             std::uint64_t id1 = 0, std::uint64_t id2 = 0) {
    return RngEngine(stream_key(master, id0, id1, id2));
}

}  // namespace jsr
