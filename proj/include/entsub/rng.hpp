#pragma once

#include <cstdint>
#include <random>

#include "entsub/state.hpp"

namespace entsub {

/// Deterministic seeded stream: (seed, stream_id) fully determines the draw
/// sequence, independent of execution order elsewhere. Streams are the unit
/// of parallelism; a single stream must not be shared across tasks.
///
/// Derivation conventions used throughout the library (tags passed to
/// substream): restart r uses tag r; simulation trial block b uses tag
/// 2^32 + b; per-state certificate searches use tag 2^48 + j.
class RngStream {
  public:
    explicit RngStream(uint64_t seed, uint64_t stream_id = 0);

    uint64_t seed() const { return seed_; }
    uint64_t stream_id() const { return stream_id_; }

    /// Independent child stream; deterministic in (seed, stream_id, tag).
    RngStream substream(uint64_t tag) const;

    uint64_t raw();

    /// Uniform on [0, 1) with 53 random mantissa bits.
    double uniform();

    /// Standard complex Gaussian CN(0,1) via the polar transform
    /// sqrt(-ln u1) * exp(2*pi*i*u2) from two uniform draws; bit-stable
    /// wherever mt19937_64 and libm agree.
    Complex complex_gaussian();

    /// Uniform integer in [0, n).
    int64_t uniform_index(int64_t n);

  private:
    uint64_t seed_;
    uint64_t stream_id_;
    std::mt19937_64 gen_;
};

} // namespace entsub
