#include "nubot/error.hpp"
#include "nubot/programs.hpp"
#include "programs_internal.hpp"
#include "programs_tm.hpp"

namespace nubot::programs {

using namespace internal;

namespace internal {

std::string tapeCell(std::string_view prefix, char sym) { return cat(prefix, std::string(1, sym)); }

std::string headCell(std::string_view prefix, std::string_view q, char sym) {
  return cat(prefix, q, "@", std::string(1, sym));
}

void addTuringRules(RuleList& rl, const TMSpec& tm, std::string_view prefix, Direction d, bool grow) {
  const std::string dir(toString(d));
  const char plain[] = {'0', '1', '_'};
  const std::string marker = tapeCell(prefix, 'B');
  for (const auto& [key, tr] : tm.delta) {
    const auto& [q, a] = key;
    if (a == TapeSymbol::Marker) continue;
    const char as = toChar(a);
    const char ws = toChar(tr.write);
    const std::string here = headCell(prefix, q, as);
    if (tr.move == HeadMove::Right) {
      for (char b : plain)
        rl.add(here, tapeCell(prefix, b), "r", dir, tapeCell(prefix, ws), headCell(prefix, tr.next, b), "r", dir);
      if (grow) rl.add(here, marker, "r", dir, tapeCell(prefix, ws), headCell(prefix, tr.next, 'B'), "r", dir);
    } else {
      for (char b : plain)
        rl.add(tapeCell(prefix, b), here, "r", dir, headCell(prefix, tr.next, b), tapeCell(prefix, ws), "r", dir);
      rl.add(marker, here, "r", dir, marker, headCell(prefix, tr.next, ws), "r", dir);
    }
  }
  if (!grow) return;
  for (const std::string& q : tm.states())
    rl.add(headCell(prefix, q, 'B'), "-", "n", dir, headCell(prefix, q, '_'), marker, "r", dir);
}

}  // namespace internal

Program genTuringMachine(const TMSpec& tm, const std::string& input) {
  for (char ch : input)
    if (ch != '0' && ch != '1') throw Error(ErrorCode::InvalidArgument, "input must be a bit string");
  RuleList rl;
  addTuringRules(rl, tm, "", Direction::PlusX, true);

  const std::string tape = input.empty() ? std::string("_") : input;
  std::vector<std::string> cells{"B"};
  for (std::size_t i = 0; i < tape.size(); ++i)
    cells.push_back(i == 0 ? headCell("", tm.start, tape[0]) : std::string(1, tape[i]));
  cells.push_back("B");

  const TMResult res = interpret(tm, input);
  if (res.outcome != TMOutcome::Accept && res.outcome != TMOutcome::Reject)
    throw Error(ErrorCode::InvalidArgument, "machine does not halt on the input within the step budget");
  std::string finalTape = res.tape;
  finalTape.resize(res.extent, '_');
  std::vector<std::string> done{"B"};
  for (std::size_t i = 0; i < finalTape.size(); ++i)
    done.push_back(i == res.head ? headCell("", res.finalState, finalTape[i]) : std::string(1, finalTape[i]));
  done.push_back("B");
  TerminalSpec t{chain(done, {0, 0}, Direction::PlusX), true, true,
                 "tape " + finalTape + " halted in " + res.finalState};
  return finish("turing", rl, chain(cells, {0, 0}, Direction::PlusX), std::move(t), Scaling::Custom);
}

}  // namespace nubot::programs
