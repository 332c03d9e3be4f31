#pragma once

#include <string>
#include <string_view>

#include "nubot/tm.hpp"
#include "programs_internal.hpp"

namespace nubot::programs::internal {

std::string tapeCell(std::string_view prefix, char sym);
std::string headCell(std::string_view prefix, std::string_view q, char sym);

/// Rules running `tm` on a rigid tape whose cell i+1 sits at direction `d`
/// of cell i, delimited by marker cells. With `grow` the right marker
/// extends the tape on demand.
void addTuringRules(RuleList& rl, const TMSpec& tm, std::string_view prefix, Direction d, bool grow);

}  // namespace nubot::programs::internal
