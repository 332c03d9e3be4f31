#include "nubot/rules.hpp"

#include <algorithm>
#include <unordered_set>

#include "nubot/error.hpp"

namespace nubot {

std::string_view toString(ValidationError e) {
  switch (e) {
    case ValidationError::BothSidesEmpty: return "BothSidesEmpty";
    case ValidationError::EmptyWithBond: return "EmptyWithBond";
    case ValidationError::MovementWithEmpty: return "MovementWithEmpty";
    case ValidationError::MovementDistanceNotOne: return "MovementDistanceNotOne";
  }
  return "?";
}

std::optional<ValidationError> validateRule(const Rule& r) {
  const auto& l = r.lhs;
  const auto& h = r.rhs;
  if (l.s1.isEmpty() && l.s2.isEmpty()) return ValidationError::BothSidesEmpty;
  if ((l.s1.isEmpty() || l.s2.isEmpty()) && l.bond != BondType::Null)
    return ValidationError::EmptyWithBond;
  if ((h.s1.isEmpty() || h.s2.isEmpty()) && h.bond != BondType::Null)
    return ValidationError::EmptyWithBond;
  if (l.dir != h.dir) {
    if (l.s1.isEmpty() || l.s2.isEmpty() || h.s1.isEmpty() || h.s2.isEmpty())
      return ValidationError::MovementWithEmpty;
    if (hexDistance(l.dir, h.dir) != 1) return ValidationError::MovementDistanceNotOne;
  }
  return std::nullopt;
}

std::string_view toString(RuleClass c) {
  switch (c) {
    case RuleClass::StateChange: return "stateChange";
    case RuleClass::BondChange: return "bondChange";
    case RuleClass::Appearance: return "appearance";
    case RuleClass::Disappearance: return "disappearance";
    case RuleClass::Movement: return "movement";
    case RuleClass::Mixed: return "mixed";
  }
  return "?";
}

RuleClass classify(const Rule& r) {
  if (r.isMovement()) return RuleClass::Movement;
  const auto& l = r.lhs;
  const auto& h = r.rhs;
  const bool appear = (l.s1.isEmpty() && !h.s1.isEmpty()) || (l.s2.isEmpty() && !h.s2.isEmpty());
  const bool disappear =
      (!l.s1.isEmpty() && h.s1.isEmpty()) || (!l.s2.isEmpty() && h.s2.isEmpty());
  if (appear && disappear) return RuleClass::Mixed;
  if (appear) return RuleClass::Appearance;
  if (disappear) return RuleClass::Disappearance;
  const bool stateChange = l.s1 != h.s1 || l.s2 != h.s2;
  const bool bondChange = l.bond != h.bond;
  if (stateChange && bondChange) return RuleClass::Mixed;
  if (bondChange) return RuleClass::BondChange;
  return RuleClass::StateChange;
}

RuleSet::RuleSet(std::vector<Rule> rules) {
  for (auto& r : rules) add(std::move(r));
}

void RuleSet::add(Rule r) {
  if (auto err = validateRule(r))
    throw Error(ErrorCode::Validation,
                "rule " + std::to_string(rules_.size()) +
                    (r.label.empty() ? "" : " (" + r.label + ")") + ": " + std::string(toString(*err)));
  index_[key(r.lhs.s1, r.lhs.s2, r.lhs.dir)].push_back(static_cast<std::uint32_t>(rules_.size()));
  rules_.push_back(std::move(r));
}

const std::vector<std::uint32_t>& RuleSet::lookup(StateId s1, StateId s2, Direction dir) const {
  static const std::vector<std::uint32_t> kNone;
  auto it = index_.find(key(s1, s2, dir));
  return it == index_.end() ? kNone : it->second;
}

std::size_t RuleSet::stateCount() const {
  std::unordered_set<StateId> states;
  for (const Rule& r : rules_)
    for (StateId s : {r.lhs.s1, r.lhs.s2, r.rhs.s1, r.rhs.s2})
      if (!s.isEmpty()) states.insert(s);
  return states.size();
}

std::vector<CandidateEvent> matchCandidates(const Configuration& c, const RuleSet& rs) {
  std::vector<CandidateEvent> out;
  if (rs.empty()) return out;
  auto emit = [&](GridPoint p1, Direction u, StateId s1, StateId s2, BondType b) {
    for (std::uint32_t ri : rs.lookup(s1, s2, u)) {
      const Rule& r = rs[ri];
      if (r.lhs.bond != b) continue;
      if (r.isMovement()) {
        out.push_back({ri, p1, p1 + vec(u), Arm::S1});
        out.push_back({ri, p1, p1 + vec(u), Arm::S2});
      } else {
        out.push_back({ri, p1, p1 + vec(u), Arm::None});
      }
    }
  };
  for (const auto& [p, cell] : c.cells()) {
    for (Direction u : kDirections) {
      const GridPoint q = p + vec(u);
      const auto* other = c.cell(q);
      if (other) {
        emit(p, u, cell.state, other->state, cell.bonds[index(u)]);
      } else {
        emit(p, u, cell.state, kEmpty, BondType::Null);
        // Rules with an EMPTY s1 site, anchored at the empty neighbour.
        emit(q, opposite(u), kEmpty, cell.state, BondType::Null);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const CandidateEvent& a, const CandidateEvent& b) {
    if (a.p1 != b.p1) return a.p1 < b.p1;
    const auto da = directionBetween(a.p1, a.p2);
    const auto db = directionBetween(b.p1, b.p2);
    if (da != db) return index(*da) < index(*db);
    if (a.rule != b.rule) return a.rule < b.rule;
    return a.arm < b.arm;
  });
  return out;
}

}  // namespace nubot
