#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "programs_internal.hpp"

namespace nubot::programs::internal {

/// One doubling level: the pair (left, right) becomes
/// leftPair.first leftPair.second rightPair.first rightPair.second.
/// Intermediate states are pf + role + tag + step.
std::vector<Rule> doublingLevel(const std::string& pf, const std::string& tag, const std::string& left,
                                const std::string& right, const std::pair<std::string, std::string>& leftPair,
                                const std::pair<std::string, std::string>& rightPair);

/// Adds the doubling rules and seed chain for an n-line; returns the seed state.
std::string addFastLine(RuleList& rl, std::uint64_t n, std::string_view tag);

struct SyncStates {
  std::string trigger;  // backbone state that grows a sync monomer
  std::string final;
  std::string prefix;
  Direction side = Direction::MinusY;   // sync monomer relative to its backbone monomer
  Direction shift = Direction::MinusW;  // the same after the row shift
};

void addSyncRules(RuleList& rl, const SyncStates& st);

}  // namespace nubot::programs::internal
