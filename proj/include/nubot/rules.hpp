#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nubot/grid.hpp"
#include "nubot/model.hpp"

namespace nubot {

/// One side of an interaction rule: s2 sits at dir relative to s1.
struct RuleSide {
  StateId s1;
  StateId s2;
  BondType bond = BondType::Null;
  Direction dir = Direction::PlusX;
  bool operator==(const RuleSide&) const = default;
};

struct Rule {
  RuleSide lhs;
  RuleSide rhs;
  std::string label;

  bool isMovement() const { return lhs.dir != rhs.dir; }
  bool operator==(const Rule& o) const { return lhs == o.lhs && rhs == o.rhs; }
};

enum class ValidationError {
  BothSidesEmpty,
  EmptyWithBond,
  MovementWithEmpty,
  MovementDistanceNotOne,
};

std::string_view toString(ValidationError e);

std::optional<ValidationError> validateRule(const Rule& r);

enum class RuleClass { StateChange, BondChange, Appearance, Disappearance, Movement, Mixed };

std::string_view toString(RuleClass c);

RuleClass classify(const Rule& r);

/// Ordered, validated list of rules with a lookup index on (s1, s2, dir).
class RuleSet {
 public:
  RuleSet() = default;
  explicit RuleSet(std::vector<Rule> rules);

  /// Throws Error(Validation) naming the rule and the violated clause.
  void add(Rule r);

  std::size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }
  const Rule& operator[](std::size_t i) const { return rules_[i]; }
  const std::vector<Rule>& rules() const { return rules_; }
  auto begin() const { return rules_.begin(); }
  auto end() const { return rules_.end(); }

  /// Indices of rules whose lhs has exactly these states and orientation.
  const std::vector<std::uint32_t>& lookup(StateId s1, StateId s2, Direction dir) const;

  /// Distinct non-EMPTY states mentioned by any rule.
  std::size_t stateCount() const;

 private:
  static std::uint64_t key(StateId s1, StateId s2, Direction dir) {
    return (static_cast<std::uint64_t>(s1.value()) << 32 | s2.value()) * 8 + index(dir);
  }
  std::vector<Rule> rules_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> index_;
};

enum class Arm : std::uint8_t { None = 0, S1 = 1, S2 = 2 };

/// A potentially applicable rule application. p1 holds s1, p2 = p1 + dir holds s2.
struct CandidateEvent {
  std::uint32_t rule = 0;
  GridPoint p1;
  GridPoint p2;
  Arm arm = Arm::None;
  bool operator==(const CandidateEvent&) const = default;
};

/// All lhs matches, ordered by (p1, direction, rule index, arm). Movement
/// rules contribute one candidate per arm choice.
std::vector<CandidateEvent> matchCandidates(const Configuration& c, const RuleSet& rs);

}  // namespace nubot
