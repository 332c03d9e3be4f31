#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nubot/model.hpp"
#include "nubot/rules.hpp"
#include "nubot/tm.hpp"

namespace nubot::programs {

enum class Scaling { Linear, Log, LogSquared, LogPower, Custom };

std::string_view toString(Scaling s);

/// Expected terminal assembly, compared modulo translation.
struct TerminalSpec {
  Configuration target;
  bool compareStates = true;
  bool compareBonds = true;
  std::string description;

  bool matches(const Configuration& c) const;
  /// Hex FNV-1a of the canonical target plus the comparison flags.
  std::string digest() const;
};

struct Program {
  std::string name;
  RuleSet rules;
  Configuration initial;
  TerminalSpec terminal;
  Scaling predictedScaling = Scaling::Custom;
  std::size_t stateCount = 0;
};

/// Seed k grows a rigid +x line of k+1 monomers in state 0.
Program genSimpleLine(std::uint64_t k);
/// Walker steps along a rigid track of trackLen monomers.
Program genWalker(std::uint64_t trackLen);
/// A rigid pair "1","x" grows a third monomer between them.
Program genInsertion();
/// A rigid arm of n+1 monomers along -x+y rotates to +y.
Program genRotation(std::uint64_t n);
/// Tape row [B][cells][B] along +x; the head state lives in a tape cell as "q@a".
Program genTuringMachine(const TMSpec& tm, const std::string& input);
/// Rigid +x line of n monomers in state 0 built by doubling insertions.
Program genFastLine(std::uint64_t n);
/// Fast line plus a synchronization row; every monomer ends in finalState.
Program genSyncLine(std::uint64_t n, std::string_view finalState = "final");
/// Backbone of n columns, column i carrying the log2(n) bits of i below it.
Program genCounter(std::uint64_t n);
/// Fully rigid n x n rhombus {(i, j) : 0 <= i, j < n}.
Program genSquare(std::uint64_t n);
/// Shape on a sqrt(n) x sqrt(n) canvas (n = 4^k): canvas cell i, laid out
/// boustrophedon by snakeCell, is kept iff tm accepts the log2(n) bits of i.
/// The machine may use at most sqrt(n) tape cells.
Program genShape(const TMSpec& tm, std::uint64_t n,
                 const std::optional<std::set<GridPoint>>& expectedPixels = std::nullopt);
/// n x n block (n = 2^(2^p), p >= 1). Row i splits into n / h strips of
/// h = log2 n cells; strip s is black iff tm accepts the h bits of i followed
/// by the h - p bits of s, using at most 2h tape cells.
Program genPattern(const TMSpec& tm, std::uint64_t n);

/// Program stages exposed for tests and analysis.
namespace detail {

/// Parts of the doubling subroutine for one level x >= 1 (pair "L<x>","r").
std::vector<Rule> fastLineLevel(std::uint64_t x);
/// Descending powers of two of n.
std::vector<unsigned> powersOf(std::uint64_t n);

/// Reference pixel sets computed by the interpreter.
std::set<GridPoint> shapePixels(const TMSpec& tm, std::uint64_t n);
std::vector<std::vector<bool>> patternColours(const TMSpec& tm, std::uint64_t n);

/// Canvas index i to cell (a, b) along the boustrophedon order.
GridPoint snakeCell(std::uint64_t i, std::uint64_t side);

}  // namespace detail

}  // namespace nubot::programs
