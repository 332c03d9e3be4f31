#include "nubot/programs.hpp"

#include <algorithm>
#include <sstream>

#include "nubot/error.hpp"
#include "programs_internal.hpp"

namespace nubot::programs {

namespace internal {

void RuleList::add(std::string_view s1, std::string_view s2, std::string_view b, std::string_view d,
                   std::string_view t1, std::string_view t2, std::string_view bp, std::string_view dp) {
  add(io::parseRule(cat(s1, " ", s2, " ", b, " ", d, " -> ", t1, " ", t2, " ", bp, " ", dp)));
}

void RuleList::add(const Rule& r) {
  if (auto err = validateRule(r))
    throw Error(ErrorCode::Validation, io::formatRule(r) + ": " + std::string(toString(*err)));
  if (seen_.insert(io::formatRule(r)).second) rules_.push_back(r);
}

void RuleList::add(const std::vector<Rule>& rs, Direction (*f)(Direction)) {
  for (Rule r : rs) {
    r.lhs.dir = f(r.lhs.dir);
    r.rhs.dir = f(r.rhs.dir);
    add(r);
  }
}

Direction reflectXY(Direction d) {
  switch (d) {
    case Direction::PlusX: return Direction::PlusY;
    case Direction::PlusY: return Direction::PlusX;
    case Direction::PlusW: return Direction::MinusW;
    case Direction::MinusX: return Direction::MinusY;
    case Direction::MinusY: return Direction::MinusX;
    case Direction::MinusW: return Direction::PlusW;
  }
  return d;
}

Configuration chain(const std::vector<std::string>& states, GridPoint origin, Direction d, BondType bond) {
  Configuration c;
  GridPoint p = origin;
  for (std::size_t i = 0; i < states.size(); ++i, p += vec(d)) {
    c.place(p, StateId::of(states[i]));
    if (i > 0 && bond != BondType::Null) c.setBond(p, opposite(d), bond);
  }
  return c;
}

Configuration seed(std::string_view state) {
  Configuration c;
  c.place({0, 0}, StateId::of(state));
  return c;
}

Program finish(std::string name, const RuleList& rules, Configuration initial, TerminalSpec terminal,
               Scaling scaling) {
  Program p;
  p.name = std::move(name);
  p.rules = rules.build();
  p.initial = std::move(initial);
  p.terminal = std::move(terminal);
  p.predictedScaling = scaling;
  p.stateCount = p.rules.stateCount();
  return p;
}

std::vector<std::string> repeat(std::string_view s, std::size_t n) { return std::vector<std::string>(n, std::string(s)); }

}  // namespace internal

using namespace internal;

std::string_view toString(Scaling s) {
  switch (s) {
    case Scaling::Linear: return "n";
    case Scaling::Log: return "log n";
    case Scaling::LogSquared: return "log^2 n";
    case Scaling::LogPower: return "log^(l+1) n";
    case Scaling::Custom: return "custom";
  }
  return "?";
}

namespace {

Configuration project(const Configuration& c, bool states, bool bonds) {
  if (states && bonds) return canonicalize(c);
  static const StateId any = StateId::of("?");
  Configuration out;
  for (const auto& [p, cell] : c.cells()) out.place(p, states ? cell.state : any);
  if (bonds)
    for (const auto& [p, cell] : c.cells())
      for (Direction d : kDirections)
        if (cell.bonds[index(d)] != BondType::Null) out.setBond(p, d, cell.bonds[index(d)]);
  return canonicalize(out);
}

}  // namespace

bool TerminalSpec::matches(const Configuration& c) const {
  if (c.size() != target.size()) return false;
  return project(c, compareStates, compareBonds) == project(target, compareStates, compareBonds);
}

std::string TerminalSpec::digest() const {
  std::string text = io::serializeConfiguration(project(target, compareStates, compareBonds));
  text += compareStates ? "states=1\n" : "states=0\n";
  text += compareBonds ? "bonds=1\n" : "bonds=0\n";
  return io::hex64(io::fnv1a(text));
}

Program genSimpleLine(std::uint64_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "simple line needs k >= 1");
  RuleList rl;
  for (std::uint64_t i = k; i >= 1; --i) rl.add(str(i), "-", "n", "+x", "0", str(i - 1), "r", "+x");
  TerminalSpec t{chain(repeat("0", k + 1), {0, 0}, Direction::PlusX), true, true,
                 "rigid +x line of " + str(k + 1) + " monomers in state 0"};
  return finish("simpleline", rl, seed(str(k)), std::move(t), Scaling::Linear);
}

Program genWalker(std::uint64_t trackLen) {
  if (trackLen < 2) throw Error(ErrorCode::InvalidArgument, "walker track needs at least 2 monomers");
  RuleList rl;
  rl.add("1 1 n -w -> 2 1 r -w");
  rl.add("1 2 r +y -> 1 1 n +y");
  rl.add("1 1 r +w -> 1 1 r +y");
  const int len = static_cast<int>(trackLen);
  Configuration init = chain(repeat("1", trackLen), {0, 0}, Direction::PlusX);
  init.place({0, 1}, StateId::of("1"));
  init.setBond({0, 0}, Direction::PlusY, BondType::Rigid);
  Configuration target = chain(repeat("1", trackLen), {0, 0}, Direction::PlusX);
  target.place({len - 1, 1}, StateId::of("1"));
  target.setBond({len - 1, 0}, Direction::PlusY, BondType::Rigid);
  TerminalSpec t{std::move(target), true, true, "walker above the last track monomer"};
  return finish("walker", rl, std::move(init), std::move(t), Scaling::Linear);
}

Program genInsertion() {
  RuleList rl;
  rl.add("1 - n +y -> 1.1 0 r +y");
  rl.add("0 x n -w -> 0 x.1 r -w");
  rl.add("1.1 x.1 r +x -> 1.1 x.1 n +x");
  rl.add("0 x.1 r -w -> 0.1 x.1 r +x");
  rl.add("1.1 0.1 r +y -> 2 2 r +x");
  rl.add("2 x.1 r +x -> 2 x r +x");
  TerminalSpec t{chain({"2", "2", "x"}, {0, 0}, Direction::PlusX), true, true,
                 "rigid line 2 2 x with the new monomer in the middle"};
  return finish("insertion", rl, chain({"1", "x"}, {0, 0}, Direction::PlusX), std::move(t), Scaling::Custom);
}

Program genRotation(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "rotation needs n >= 1");
  RuleList rl;
  rl.add("1 1 r +w -> 1 1 r +y");
  TerminalSpec t{chain(repeat("1", n + 1), {0, 0}, Direction::PlusY), true, true,
                 "rigid +y arm of " + str(n + 1) + " monomers"};
  return finish("rotation", rl, chain(repeat("1", n + 1), {0, 0}, Direction::PlusW), std::move(t), Scaling::Log);
}

}  // namespace nubot::programs
