#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "entsub/errors.hpp"

namespace entsub {

/// Dimension vector of a multipartite Hilbert space H = H_1 (x) ... (x) H_m.
///
/// Global amplitudes are ordered row-major over the multi-index
/// (k_1, ..., k_m) with factor 1 slowest, i.e.
///   g = ((k_1 * d_2 + k_2) * d_3 + k_3) ...
/// All reshaping and serialization in this library relies on that order.
class SpaceSpec {
  public:
    SpaceSpec() = default;

    explicit SpaceSpec(std::vector<int> dims) : dims_(std::move(dims)) {
        if (dims_.empty())
            throw InvalidInput("SpaceSpec: at least one factor required");
        dim_ = 1;
        for (int d : dims_) {
            if (d < 2)
                throw InvalidInput("SpaceSpec: every factor dimension must be >= 2");
            if (dim_ > (int64_t{1} << 40) / d)
                throw InvalidInput("SpaceSpec: total dimension too large");
            dim_ *= d;
        }
    }

    const std::vector<int>& dims() const { return dims_; }
    int factor_count() const { return static_cast<int>(dims_.size()); }
    int64_t dim() const { return dim_; }

    /// Row-major digits of a global index, factor 1 slowest.
    void decompose(int64_t g, std::span<int> digits) const {
        for (int j = factor_count() - 1; j >= 0; --j) {
            digits[j] = static_cast<int>(g % dims_[j]);
            g /= dims_[j];
        }
    }

    int64_t compose(std::span<const int> digits) const {
        int64_t g = 0;
        for (int j = 0; j < factor_count(); ++j)
            g = g * dims_[j] + digits[j];
        return g;
    }

    /// Dimension vector of the c-fold tensor power, copy 1 slowest.
    SpaceSpec tensor_power(int copies) const {
        if (copies < 1)
            throw InvalidInput("tensor_power: copies must be >= 1");
        std::vector<int> tiled;
        tiled.reserve(dims_.size() * copies);
        for (int c = 0; c < copies; ++c)
            tiled.insert(tiled.end(), dims_.begin(), dims_.end());
        return SpaceSpec(tiled);
    }

    bool operator==(const SpaceSpec& other) const { return dims_ == other.dims_; }

  private:
    std::vector<int> dims_;
    int64_t dim_ = 0;
};

/// Bipartition of the factor indices; `left` is the explicit index set.
struct Cut {
    std::vector<int> left;

    static Cut single_factor(int j) { return Cut{{j}}; }
};

} // namespace entsub
