#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace nubot {

/// Tape symbols: '0', '1', '_' (blank) and 'B' (end-of-tape marker).
enum class TapeSymbol : char { Zero = '0', One = '1', Blank = '_', Marker = 'B' };

std::optional<TapeSymbol> parseTapeSymbol(char c);
char toChar(TapeSymbol s);

enum class HeadMove : char { Left = 'L', Right = 'R' };

struct Transition {
  std::string next;
  TapeSymbol write = TapeSymbol::Blank;
  HeadMove move = HeadMove::Right;
  bool operator==(const Transition&) const = default;
};

/// Single-tape machine on a tape infinite to the right. The input occupies
/// cells 0..len-1 and the head starts on cell 0; a left move on cell 0 stays.
struct TMSpec {
  std::string start;
  std::set<std::string> accept;
  std::set<std::string> reject;
  std::map<std::pair<std::string, TapeSymbol>, Transition> delta;

  /// Program size s: number of transition-table entries.
  std::size_t programSize() const { return delta.size(); }
  /// Every state mentioned by the table, start, accept and reject sets.
  std::set<std::string> states() const;
  bool isHalting(const std::string& q) const { return accept.count(q) || reject.count(q); }
  bool operator==(const TMSpec&) const = default;
};

enum class TMOutcome { Accept, Reject, Stuck, StepLimit };

struct TMResult {
  TMOutcome outcome = TMOutcome::StepLimit;
  std::string finalState;
  std::string tape;  // trailing blanks trimmed
  std::size_t head = 0;
  std::uint64_t steps = 0;
  std::size_t extent = 0;  // cells ever allocated: max(1, |input|, head + 1)
};

/// Direct table-driven interpreter; the reference against which compiled
/// nubot programs are checked.
TMResult interpret(const TMSpec& tm, const std::string& input, std::uint64_t maxSteps = 1'000'000);

namespace tm_library {

/// Flips every input bit, then accepts at the first blank.
TMSpec bitFlipper();
/// Appends a 1 to a unary string.
TMSpec unaryIncrement();
TMSpec immediateAccept();
TMSpec constantAccept();
/// Accepts iff the first two input bits differ.
TMSpec firstBitsDiffer();
/// Reads exactly `bits` input bits and accepts iff their value is in `accepted`.
TMSpec lookupTable(unsigned bits, const std::set<std::uint64_t>& accepted);
/// Accepts iff the last bits of the two fields (rowBits, then colBits) agree.
TMSpec checkerboard(unsigned rowBits, unsigned colBits);

}  // namespace tm_library

}  // namespace nubot
