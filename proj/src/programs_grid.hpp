#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "programs_internal.hpp"

namespace nubot::programs::internal {

/// Cell kind of a row segment. Cells with hasA hold one bit of the row
/// counter (most significant at the segment start); `up` indexes the kind
/// created directly above.
struct RowKind {
  std::string name;
  bool start = false;
  bool end = false;
  bool hasA = false;
  std::size_t up = 0;
};

/// Rows grow upward one copy at a time: every cell creates the cell above
/// it, the copy's counter is incremented right to left inside its segment,
/// and a segment whose counter is all ones stops growing.
struct RowEngine {
  std::string pf;
  std::vector<RowKind> kinds;
  std::vector<std::pair<std::size_t, std::size_t>> adjacent;  // (left, right) inside a segment
  /// State a cell takes once its row is settled; `top` marks the last row.
  std::function<std::string(const RowKind&, char a, bool top)> tape;

  std::string go(const RowKind& k, char a) const { return cat(pf, "g.", k.name, ".", std::string(1, a)); }
};

void addRowCopy(RuleList& rl, const RowEngine& e);

std::vector<char> bitsOf(const RowKind& k);

}  // namespace nubot::programs::internal
