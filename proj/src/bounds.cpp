#include "entsub/bounds.hpp"

#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

namespace entsub {
namespace bounds {

namespace {

using BigInt = boost::multiprecision::cpp_int;

BigInt factorial(int64_t n) {
    BigInt f = 1;
    for (int64_t k = 2; k <= n; ++k)
        f *= k;
    return f;
}

int64_t checked_int64(const BigInt& v, const char* what) {
    if (v > std::numeric_limits<int64_t>::max())
        throw InvalidInput(std::string(what) + ": result exceeds the 64-bit range");
    return static_cast<int64_t>(v);
}

int64_t local_dim_sum(const SpaceSpec& space) {
    int64_t s = 0;
    for (int d : space.dims())
        s += d - 1;
    return s;
}

} // namespace

int64_t s_max(const SpaceSpec& space) {
    return space.dim() - local_dim_sum(space) - 1;
}

int64_t segre_degree(const SpaceSpec& space) {
    BigInt deg = factorial(local_dim_sum(space));
    for (int d : space.dims())
        deg /= factorial(d - 1);
    return checked_int64(deg, "segre_degree");
}

int64_t schmidt_smax(int d1, int d2, int r) {
    if (d1 < 2 || d2 < 2)
        throw InvalidInput("schmidt_smax: factor dimensions must be >= 2");
    if (r < 1 || r >= std::min(d1, d2))
        throw InvalidInput("schmidt_smax: rank must satisfy 1 <= r < min(d1, d2)");
    return static_cast<int64_t>(d1 - r) * (d2 - r);
}

int64_t determinantal_degree(int d1, int d2, int r) {
    if (!(d2 >= d1 && d1 > r && r >= 1))
        throw InvalidInput("determinantal_degree: requires d2 >= d1 > r >= 1");
    BigInt num = 1, den = 1;
    for (int j = 0; j <= d1 - r - 1; ++j) {
        num *= factorial(d2 + j) * factorial(j);
        den *= factorial(r + j) * factorial(d2 - r + j);
    }
    return checked_int64(num / den, "determinantal_degree");
}

int64_t locc_threshold(const SpaceSpec& space, int64_t copies) {
    if (copies < 1)
        throw InvalidInput("locc_threshold: copies must be >= 1");
    return 1 + copies * local_dim_sum(space);
}

int64_t min_copies(const SpaceSpec& space, int64_t n) {
    if (n < 2)
        throw InvalidInput("min_copies: n must be >= 2");
    const int64_t k = local_dim_sum(space);
    return (n - 1 + k - 1) / k;
}

std::optional<int64_t> generic_product_count(const SpaceSpec& space, int64_t s) {
    if (s <= s_max(space))
        return 0;
    if (s == s_max(space) + 1)
        return segre_degree(space);
    return std::nullopt;
}

ThresholdReport threshold_report(const SpaceSpec& space, int64_t copies,
                                 std::optional<int64_t> n) {
    ThresholdReport rep;
    rep.space = space;
    rep.s_max = s_max(space);
    rep.segre_degree = segre_degree(space);
    rep.copies = copies;
    rep.locc_threshold = locc_threshold(space, copies);
    rep.n = n;
    if (n)
        rep.min_copies = min_copies(space, *n);
    return rep;
}

} // namespace bounds
} // namespace entsub
