#include "nubot/error.hpp"
#include "nubot/programs.hpp"
#include "programs_counter.hpp"
#include "programs_internal.hpp"
#include "programs_line.hpp"

namespace nubot::programs {

using namespace internal;

namespace {

// Root states once the column is done: Kd<l><r>, l/r set when the neighbour
// root on that side is bonded (or known absent).
std::string done(int l, int r) { return cat("Kd", str(l), str(r)); }

void addContraction(RuleList& rl) {
  for (int f = 0; f < 2; ++f) {
    rl.add(done(0, f), "-", "n", "-x", done(1, f), "-", "n", "-x");
    rl.add("s2", done(0, f), "r", "+x", "s2g", done(0, f), "r", "+x");
    rl.add(done(f, 0), "s1T", "r", "+x", done(f, 1), "-", "n", "+x");
    // First spacer folds under the A-s2 edge.
    rl.add(done(f, 0), "s1g", "r", "+x", done(f, 0), "s1m", "r", "-w");
    rl.add(done(f, 0), "s2i", "n", "+x", done(f, 0), "s2j", "r", "+x");
    // Then the second folds under the A-B edge.
    rl.add(done(f, 0), "s2k", "r", "+x", done(f, 0), "s2m", "r", "-w");
    rl.add("s2m", done(0, f), "r", "+x", "s2n", done(0, f), "r", "+y");
    rl.add("s2n", done(1, f), "r", "+y", "-", done(1, f), "n", "+y");
    for (int g = 0; g < 2; ++g) rl.add(done(f, 0), done(0, g), "n", "+x", done(f, 1), done(1, g), "r", "+x");
  }
  // Trailing spacers after the last root.
  rl.add("s2", "-", "n", "+x", "s2T", "-", "n", "+x");
  rl.add("s1", "s2T", "r", "+x", "s1T", "-", "n", "+x");
  rl.add("s1", "s2g", "r", "+x", "s1g", "s2h", "r", "+x");
  rl.add("s1m", "s2h", "r", "+x", "s1n", "s2i", "r", "+y");
  rl.add("s1n", "s2j", "r", "+y", "-", "s2k", "n", "+y");
  rl.add("s2n", "q", "r", "+y", "-", "q", "n", "+y");
  rl.add(done(1, 1), "q", "r", "+y", "q", "q", "r", "+y");
  rl.add("q", "q", "n", "+x", "q", "q", "r", "+x");
  rl.add("q", "q", "n", "+w", "q", "q", "r", "+w");
}

}  // namespace

Program genSquare(std::uint64_t n) {
  const unsigned p = log2Exact(n, ErrorCode::NotPowerOfTwo, "square side");
  Configuration target;
  for (int i = 0; i < static_cast<int>(n); ++i)
    for (int j = 0; j < static_cast<int>(n); ++j) target.place({i, j}, StateId::of("q"));
  for (int i = 0; i < static_cast<int>(n); ++i)
    for (int j = 0; j < static_cast<int>(n); ++j)
      for (Direction d : {Direction::PlusX, Direction::PlusY, Direction::PlusW}) {
        const GridPoint o = GridPoint{i, j} + vec(d);
        if (o.x >= 0 && o.y >= 0 && o.x < static_cast<int>(n) && o.y < static_cast<int>(n))
          target.setBond({i, j}, d, BondType::Rigid);
      }
  TerminalSpec t{std::move(target), true, true,
                 "rigid " + str(n) + "x" + str(n) + " rhombus in state q, every adjacent pair bonded"};
  RuleList rl;
  if (n == 1) return finish("square", rl, seed("q"), std::move(t), Scaling::Log);

  // Backbone: doubling line whose last level hands each final pair to two
  // expansion levels, turning it into K s1 s2 K s1 s2.
  const std::string top = p == 1 ? "LE1" : cat("L", str(p - 1));
  rl.add("sq", "-", "n", "+x", top, "r", "r", "+x");
  for (unsigned x = 1; x + 1 <= p; ++x) {
    const std::string next = x == 1 ? "LE1" : cat("L", str(x - 1));
    rl.add(doublingLevel("", str(x), cat("L", str(x)), "r", {next, "r"}, {next, "r"}));
  }
  rl.add(doublingLevel("", "E1", "LE1", "r", {"K", "s1"}, {"LE2", "r"}));
  rl.add(doublingLevel("", "E2", "LE2", "r", {"s2", "K"}, {"s1", "s2"}));

  // Columns: a straight doubling line of n-1 with its synchroniser, built
  // along +x and mirrored so it grows up with bridges on the +x side.
  if (n == 2) {
    rl.add("K", "-", "n", "+y", "K1", "q", "r", "+y");
  } else {
    RuleList col;
    const std::string vs = addStraightLine(col, n - 1, "v");
    addSyncRules(col, SyncStates{"v0", "q", "v", Direction::MinusY, Direction::MinusW});
    rl.add(col.rules(), reflectXY);
    rl.add("K", "-", "n", "+y", "K1", vs, "r", "+y");
    rl.add("K1", "vY", "r", "+y", "K1", "vYl", "r", "+y");
  }
  rl.add("K1", "q", "r", "+y", done(0, 0), "q", "r", "+y");
  addContraction(rl);
  return finish("square", rl, seed("sq"), std::move(t), Scaling::Log);
}

}  // namespace nubot::programs
