#pragma once

#include <string>
#include <string_view>

#include "nubot/error.hpp"
#include "programs_internal.hpp"

namespace nubot::programs::internal {

/// Doubling line of n monomers ending in pf+"0" whose backbone never leaves
/// its row (bridges above); returns the seed.
std::string addStraightLine(RuleList& rl, std::uint64_t n, const std::string& pf);

/// Counter over 2^p columns with states prefixed by `pf`; returns the seed.
/// Finished backbone monomers are pf+"0"; row cells pf+"b?" and the last pf+"e?".
std::string addCounter(RuleList& rl, unsigned p, const std::string& pf);

Configuration counterTarget(unsigned p, const std::string& pf, const std::string& backbone);

unsigned log2Exact(std::uint64_t n, ErrorCode code, std::string_view what);

}  // namespace nubot::programs::internal
