#include "nubot/tm.hpp"

#include <algorithm>

#include "nubot/error.hpp"

namespace nubot {

std::optional<TapeSymbol> parseTapeSymbol(char c) {
  switch (c) {
    case '0': return TapeSymbol::Zero;
    case '1': return TapeSymbol::One;
    case '_': return TapeSymbol::Blank;
    case 'B': return TapeSymbol::Marker;
    default: return std::nullopt;
  }
}

char toChar(TapeSymbol s) { return static_cast<char>(s); }

std::set<std::string> TMSpec::states() const {
  std::set<std::string> out{start};
  out.insert(accept.begin(), accept.end());
  out.insert(reject.begin(), reject.end());
  for (const auto& [key, t] : delta) {
    out.insert(key.first);
    out.insert(t.next);
  }
  return out;
}

TMResult interpret(const TMSpec& tm, const std::string& input, std::uint64_t maxSteps) {
  std::string tape = input.empty() ? std::string("_") : input;
  TMResult res;
  std::string q = tm.start;
  std::size_t head = 0;
  while (true) {
    if (tm.accept.count(q)) {
      res.outcome = TMOutcome::Accept;
      break;
    }
    if (tm.reject.count(q)) {
      res.outcome = TMOutcome::Reject;
      break;
    }
    if (res.steps >= maxSteps) {
      res.outcome = TMOutcome::StepLimit;
      break;
    }
    if (head >= tape.size()) tape.resize(head + 1, '_');
    auto it = tm.delta.find({q, *parseTapeSymbol(tape[head])});
    if (it == tm.delta.end()) {
      res.outcome = TMOutcome::Stuck;
      break;
    }
    tape[head] = toChar(it->second.write);
    q = it->second.next;
    if (it->second.move == HeadMove::Right)
      ++head;
    else if (head > 0)
      --head;
    ++res.steps;
  }
  res.extent = std::max(tape.size(), head + 1);
  while (!tape.empty() && tape.back() == '_') tape.pop_back();
  res.finalState = q;
  res.tape = tape;
  res.head = head;
  return res;
}

namespace tm_library {

namespace {
void add(TMSpec& tm, const std::string& q, TapeSymbol a, const std::string& next, TapeSymbol w, HeadMove m) {
  tm.delta[{q, a}] = Transition{next, w, m};
}
}  // namespace

TMSpec bitFlipper() {
  TMSpec tm;
  tm.start = "flip";
  tm.accept = {"done"};
  add(tm, "flip", TapeSymbol::Zero, "flip", TapeSymbol::One, HeadMove::Right);
  add(tm, "flip", TapeSymbol::One, "flip", TapeSymbol::Zero, HeadMove::Right);
  add(tm, "flip", TapeSymbol::Blank, "done", TapeSymbol::Blank, HeadMove::Left);
  return tm;
}

TMSpec unaryIncrement() {
  TMSpec tm;
  tm.start = "scan";
  tm.accept = {"done"};
  add(tm, "scan", TapeSymbol::One, "scan", TapeSymbol::One, HeadMove::Right);
  add(tm, "scan", TapeSymbol::Blank, "done", TapeSymbol::One, HeadMove::Left);
  return tm;
}

TMSpec immediateAccept() {
  TMSpec tm;
  tm.start = "acc";
  tm.accept = {"acc"};
  return tm;
}

TMSpec constantAccept() {
  TMSpec tm;
  tm.start = "go";
  tm.accept = {"yes"};
  for (TapeSymbol s : {TapeSymbol::Zero, TapeSymbol::One, TapeSymbol::Blank, TapeSymbol::Marker})
    add(tm, "go", s, "yes", s, HeadMove::Right);
  return tm;
}

TMSpec firstBitsDiffer() {
  TMSpec tm;
  tm.start = "a";
  tm.accept = {"yes"};
  tm.reject = {"no"};
  add(tm, "a", TapeSymbol::Zero, "saw0", TapeSymbol::Zero, HeadMove::Right);
  add(tm, "a", TapeSymbol::One, "saw1", TapeSymbol::One, HeadMove::Right);
  add(tm, "saw0", TapeSymbol::Zero, "no", TapeSymbol::Zero, HeadMove::Right);
  add(tm, "saw0", TapeSymbol::One, "yes", TapeSymbol::One, HeadMove::Right);
  add(tm, "saw1", TapeSymbol::Zero, "yes", TapeSymbol::Zero, HeadMove::Right);
  add(tm, "saw1", TapeSymbol::One, "no", TapeSymbol::One, HeadMove::Right);
  return tm;
}


TMSpec lookupTable(unsigned bits, const std::set<std::uint64_t>& accepted) {
  TMSpec tm;
  tm.start = "t.";
  tm.accept = {"yes"};
  tm.reject = {"no"};
  if (bits == 0) {
    tm.start = accepted.count(0) ? "yes" : "no";
    return tm;
  }
  for (unsigned d = 0; d < bits; ++d)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << d); ++v) {
      std::string q = "t.";
      for (unsigned j = d; j-- > 0;) q += (v >> j & 1) ? '1' : '0';
      for (int b = 0; b < 2; ++b) {
        const TapeSymbol sym = b ? TapeSymbol::One : TapeSymbol::Zero;
        const std::uint64_t w = v << 1 | static_cast<std::uint64_t>(b);
        if (d + 1 < bits)
          add(tm, q, sym, q + (b ? '1' : '0'), sym, HeadMove::Right);
        else
          add(tm, q, sym, accepted.count(w) ? "yes" : "no", sym, HeadMove::Left);
      }
    }
  return tm;
}

TMSpec checkerboard(unsigned rowBits, unsigned colBits) {
  if (rowBits == 0 || colBits == 0) throw Error(ErrorCode::InvalidArgument, "checkerboard needs both coordinates");
  TMSpec tm;
  tm.start = "a0";
  tm.accept = {"yes"};
  tm.reject = {"no"};
  for (int b = 0; b < 2; ++b) {
    const TapeSymbol sym = b ? TapeSymbol::One : TapeSymbol::Zero;
    for (unsigned d = 0; d + 1 < rowBits; ++d) add(tm, "a" + std::to_string(d), sym, "a" + std::to_string(d + 1), sym, HeadMove::Right);
    for (int r = 0; r < 2; ++r) {
      const std::string base = "c" + std::to_string(r) + ".";
      if (b == r) add(tm, "a" + std::to_string(rowBits - 1), sym, base + "0", sym, HeadMove::Right);
      for (unsigned d = 0; d + 1 < colBits; ++d)
        add(tm, base + std::to_string(d), sym, base + std::to_string(d + 1), sym, HeadMove::Right);
      add(tm, base + std::to_string(colBits - 1), sym, b == r ? "yes" : "no", sym, HeadMove::Left);
    }
  }
  return tm;
}

}  // namespace tm_library

}  // namespace nubot
