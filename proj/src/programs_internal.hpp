#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "nubot/io.hpp"
#include "nubot/programs.hpp"

namespace nubot::programs::internal {

inline std::string str(std::uint64_t v) { return std::to_string(v); }

template <typename... A>
std::string cat(const A&... parts) {
  std::string out;
  ((out += parts), ...);
  return out;
}

/// Accumulates rules in insertion order, dropping exact duplicates.
class RuleList {
 public:
  void add(std::string_view s1, std::string_view s2, std::string_view b, std::string_view d,
           std::string_view t1, std::string_view t2, std::string_view bp, std::string_view dp);
  void add(std::string_view text) { add(io::parseRule(text)); }
  void add(const Rule& r);
  void add(const std::vector<Rule>& rs) {
    for (const Rule& r : rs) add(r);
  }
  /// Adds `rs` with every direction passed through `f`.
  void add(const std::vector<Rule>& rs, Direction (*f)(Direction));
  const std::vector<Rule>& rules() const { return rules_; }
  RuleSet build() const { return RuleSet(rules_); }

 private:
  std::vector<Rule> rules_;
  std::unordered_set<std::string> seen_;
};

/// Mirror across the x = y axis: +x and +y swap, +w and -w swap.
Direction reflectXY(Direction d);

/// Monomers in `states` placed from `origin` along `d`, consecutive ones
/// joined by `bond`.
Configuration chain(const std::vector<std::string>& states, GridPoint origin, Direction d,
                    BondType bond = BondType::Rigid);

Configuration seed(std::string_view state);

Program finish(std::string name, const RuleList& rules, Configuration initial, TerminalSpec terminal,
               Scaling scaling);

std::vector<std::string> repeat(std::string_view s, std::size_t n);

}  // namespace nubot::programs::internal
