#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace entsub {
namespace cli {

/// Fixed default so bare invocations are reproducible.
inline constexpr uint64_t kDefaultSeed = 42;

/// Dispatches `entsub <subcommand> ...`. Results print as an
/// OutputDocument on `out` (or --out file); errors as structured JSON on
/// `err`. Returns 0 on success, 2 on invalid input, 3 on certify search
/// failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cli
} // namespace entsub
