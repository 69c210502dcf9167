#pragma once

#include "margulis_cli/config.hpp"

#include <cstdint>

namespace margulis::cli {

/// Randomised invariant suites; "passed" is set on the returned object.
Json run_selftest(std::uint64_t seed);

}  // namespace margulis::cli
