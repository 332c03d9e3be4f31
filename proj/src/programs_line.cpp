#include <bit>

#include "nubot/error.hpp"
#include "nubot/programs.hpp"
#include "programs_internal.hpp"
#include "programs_line.hpp"

namespace nubot::programs {

using namespace internal;

namespace internal {

std::vector<Rule> doublingLevel(const std::string& pf, const std::string& tag, const std::string& left,
                                const std::string& right, const std::pair<std::string, std::string>& leftPair,
                                const std::pair<std::string, std::string>& rightPair) {
  RuleList rl;
  auto s = [&](std::string_view role, std::string_view step) { return cat(pf, role, tag, step); };
  // Bridges U (above L) and V (above R) hold the pair while R is pushed out
  // twice; M and N are the two inserted monomers.
  rl.add(left, "-", "n", "+y", s("L", ".a"), s("U", ".1"), "r", "+y");
  rl.add(s("U", ".1"), "-", "n", "+x", s("U", ".2"), s("V", ".1"), "r", "+x");
  rl.add(right, s("V", ".1"), "n", "+y", s("R", ".a"), s("V", ".2"), "r", "+y");
  rl.add(s("L", ".a"), s("R", ".a"), "r", "+x", s("L", ".b"), s("R", ".b"), "n", "+x");
  rl.add(s("V", ".2"), s("R", ".b"), "r", "-y", s("V", ".3"), s("R", ".c"), "r", "-w");
  rl.add(s("L", ".b"), "-", "n", "+x", s("L", ".c"), s("M", ".1"), "r", "+x");
  rl.add(s("M", ".1"), s("V", ".3"), "n", "+y", s("M", ".2"), s("V", ".4"), "r", "+y");
  rl.add(s("V", ".4"), s("R", ".c"), "r", "-w", s("V", ".5"), s("R", ".d"), "r", "+x");
  rl.add(s("M", ".2"), "-", "n", "+x", s("M", ".3"), s("N", ".1"), "r", "+x");
  rl.add(s("N", ".1"), s("R", ".d"), "n", "+y", s("N", ".2"), s("R", ".e"), "r", "+y");
  rl.add(s("V", ".5"), s("R", ".e"), "r", "+x", s("V", ".6"), s("R", ".f"), "n", "+x");
  rl.add(s("N", ".2"), s("R", ".f"), "r", "+y", rightPair.first, rightPair.second, "r", "+x");
  rl.add(s("M", ".3"), s("V", ".6"), "r", "+y", s("M", ".4"), "-", "n", "+y");
  rl.add(s("M", ".4"), s("U", ".2"), "n", "+w", s("M", ".5"), "-", "n", "+w");
  rl.add(s("L", ".c"), s("M", ".5"), "r", "+x", leftPair.first, leftPair.second, "r", "+x");
  return rl.rules();
}

}  // namespace internal

namespace detail {

std::vector<Rule> fastLineLevel(std::uint64_t x) {
  if (x == 0) throw Error(ErrorCode::InvalidArgument, "levels start at 1");
  const std::string prevL = x == 1 ? "0" : cat("L", str(x - 1));
  const std::string prevR = x == 1 ? "0" : "r";
  return internal::doublingLevel("", str(x), cat("L", str(x)), "r", {prevL, prevR}, {prevL, prevR});
}

std::vector<unsigned> powersOf(std::uint64_t n) {
  std::vector<unsigned> out;
  for (int k = 63; k >= 0; --k)
    if (n >> k & 1) out.push_back(static_cast<unsigned>(k));
  return out;
}

}  // namespace detail

namespace internal {

std::string addFastLine(RuleList& rl, std::uint64_t n, std::string_view tag) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "line length must be positive");
  std::vector<std::string> roles;
  unsigned top = 0;
  for (unsigned k : detail::powersOf(n)) {
    top = std::max(top, k);
    if (k >= 2) {
      roles.push_back(cat("L", str(k - 1)));
      roles.push_back("r");
    } else if (k == 1) {
      roles.push_back("0");
      roles.push_back("0");
    } else {
      roles.push_back("0");
    }
  }
  for (unsigned x = 1; x + 1 <= top; ++x) rl.add(detail::fastLineLevel(x));
  if (roles.size() == 1) return roles[0];
  auto g = [&](std::size_t i) { return cat("g", tag, ".", str(i)); };
  const std::size_t m = roles.size();
  for (std::size_t i = 0; i + 2 < m; ++i) rl.add(g(i), "-", "n", "+x", roles[i], g(i + 1), "r", "+x");
  rl.add(g(m - 2), "-", "n", "+x", roles[m - 2], roles[m - 1], "r", "+x");
  return g(0);
}

void addSyncRules(RuleList& rl, const SyncStates& st) {
  const std::string ds(toString(st.side));
  const std::string dt(toString(st.shift));
  const std::string p = st.prefix;
  auto S = [&](std::string_view s) { return cat(p, "S.", s); };
  auto G = [&](std::string_view s) { return cat(p, "G", s); };
  const std::string Y = p + "Y", Yl = p + "Yl", Yr = p + "Yr", Yl2 = p + "Yl2", Yr2 = p + "Yr2", Z = p + "Z";
  const std::string F = p + "F", Fr = p + "Fr";

  rl.add(st.trigger, "-", "n", ds, Y, S("n00"), "r", ds);
  rl.add(Y, "-", "n", "-x", Yl, "-", "n", "-x");
  rl.add(Y, "-", "n", "+x", Yr, "-", "n", "+x");
  // Horizontal bonding; the suffix records bonds to the left and right.
  const std::pair<const char*, const char*> left[] = {{"n00", "n01"}, {"n10", "n11"}, {"l00", "l01"}};
  const std::pair<const char*, const char*> right[] = {{"n00", "n10"}, {"n01", "n11"}, {"r00", "r10"}};
  for (auto [a, a2] : left)
    for (auto [b, b2] : right) rl.add(S(a), S(b), "n", "+x", S(a2), S(b2), "r", "+x");
  rl.add(Yl, S("n00"), "r", ds, Yl2, S("l00"), "r", ds);
  rl.add(Yl, S("n01"), "r", ds, Yl2, S("l01"), "r", ds);
  rl.add(Yr, S("n00"), "r", ds, Yr2, S("r00"), "r", ds);
  rl.add(Yr, S("n10"), "r", ds, Yr2, S("r10"), "r", ds);
  rl.add(Y, S("n11"), "r", ds, Y, F, "f", ds);
  rl.add(Yr2, S("r10"), "r", ds, Yr2, Fr, "f", ds);
  // The left end moves the whole row once every other vertical bond is flexible.
  rl.add(Yl2, S("l01"), "r", ds, Z, G("01"), "r", dt);
  rl.add(Y, F, "f", dt, Z, G("11"), "r", dt);
  rl.add(Yr2, Fr, "f", dt, Z, G("10"), "r", dt);
  for (const char* a : {"0", "1"})
    for (const char* b : {"0", "1"})
      rl.add(G(cat(a, "1")), G(cat("1", b)), "r", "+x", G(cat(a, "0")), G(cat("0", b)), "n", "+x");
  rl.add(Z, G("00"), "r", dt, st.final, "-", "n", dt);
}

}  // namespace internal

Program genFastLine(std::uint64_t n) {
  RuleList rl;
  const std::string s = addFastLine(rl, n, str(n));
  TerminalSpec t{chain(repeat("0", n), {0, 0}, Direction::PlusX), true, true,
                 "rigid +x line of " + str(n) + " monomers in state 0"};
  return finish("fastline", rl, seed(s), std::move(t), Scaling::Log);
}

Program genSyncLine(std::uint64_t n, std::string_view finalState) {
  RuleList rl;
  const std::string fin(finalState);
  std::string s;
  if (n == 1) {
    s = "0";
    rl.add("0", "-", "n", "+x", fin, "-", "n", "+x");
  } else {
    s = addFastLine(rl, n, str(n));
    addSyncRules(rl, SyncStates{"0", fin, "", Direction::MinusY, Direction::MinusW});
  }
  TerminalSpec t{chain(repeat(fin, n), {0, 0}, Direction::PlusX), true, true,
                 "rigid +x line of " + str(n) + " monomers in state " + fin};
  return finish("syncline", rl, seed(s), std::move(t), Scaling::Log);
}

}  // namespace nubot::programs
