#include "entsub/rng.hpp"

#include <cmath>
#include <numbers>

namespace entsub {

namespace {

// splitmix64 finalizer (Steele, Lea, Flood 2014); full-avalanche 64-bit mix.
uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

uint64_t mix(uint64_t a, uint64_t b) { return splitmix64(splitmix64(a) ^ b); }

} // namespace

RngStream::RngStream(uint64_t seed, uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), gen_(mix(seed, stream_id)) {}

RngStream RngStream::substream(uint64_t tag) const {
    return RngStream(seed_, mix(stream_id_ + 0x5851f42d4c957f2dULL, tag));
}

uint64_t RngStream::raw() { return gen_(); }

double RngStream::uniform() {
    return static_cast<double>(raw() >> 11) * 0x1.0p-53;
}

Complex RngStream::complex_gaussian() {
    // u1 in (0, 1] keeps the log finite.
    const double u1 = static_cast<double>((raw() >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

int64_t RngStream::uniform_index(int64_t n) {
    const auto k = static_cast<int64_t>(uniform() * static_cast<double>(n));
    return k < n ? k : n - 1;
}

} // namespace entsub
