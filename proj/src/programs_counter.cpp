#include <algorithm>
#include <bit>

#include "nubot/error.hpp"
#include "nubot/programs.hpp"
#include "programs_counter.hpp"
#include "programs_internal.hpp"

namespace nubot::programs {

using namespace internal;

namespace internal {

namespace {

/// Straight-backbone doubling for level x: L R -> L M N R with three bridges
/// U, V, W above, then (with rows) rows copied below M (from L) and N (from R).
void addStraightLevel(RuleList& rl, std::uint64_t x, const std::string& pf, bool rows) {
  const std::string X = str(x);
  auto s = [&](std::string_view role, std::string_view step) { return cat(pf, role, X, step); };
  const std::string L = s("L", "");
  const std::string r = pf + "r";
  const std::string nextL = x == 1 ? pf + "0" : cat(pf, "L", str(x - 1));
  const std::string nextR = x == 1 ? pf + "0" : r;

  rl.add(L, "-", "n", "+y", s("L", ".a"), s("U", ".1"), "r", "+y");
  rl.add(s("U", ".1"), "-", "n", "+x", s("U", ".2"), s("V", ".1"), "r", "+x");
  rl.add(r, s("V", ".1"), "n", "+y", s("R", ".a"), s("V", ".2"), "r", "+y");
  rl.add(s("L", ".a"), s("R", ".a"), "r", "+x", s("L", ".b"), s("R", ".b"), "n", "+x");
  rl.add(s("V", ".2"), s("R", ".b"), "r", "-y", s("V", ".3"), s("R", ".c"), "r", "-w");
  rl.add(s("L", ".b"), "-", "n", "+x", s("L", ".c"), s("M", ".1"), "r", "+x");
  rl.add(s("M", ".1"), s("V", ".3"), "n", "+y", s("M", ".2"), s("V", ".4"), "r", "+y");
  rl.add(s("V", ".4"), "-", "n", "+x", s("V", ".5"), s("W", ".1"), "r", "+x");
  rl.add(s("R", ".c"), s("W", ".1"), "n", "+y", s("R", ".d"), s("W", ".2"), "r", "+y");
  rl.add(s("V", ".5"), s("R", ".d"), "r", "-w", s("V", ".6"), s("R", ".e"), "n", "-w");
  rl.add(s("W", ".2"), s("R", ".e"), "r", "-y", s("W", ".3"), s("R", ".f"), "r", "-w");
  rl.add(s("M", ".2"), "-", "n", "+x", s("M", ".3"), s("N", ".1"), "r", "+x");
  rl.add(s("N", ".1"), s("R", ".f"), "n", "+x", s("N", ".2"), s("R", ".g"), "r", "+x");
  // Bridges go away right to left.
  rl.add(s("N", ".2"), s("W", ".3"), "n", "+y", s("N", ".3"), "-", "n", "+y");
  rl.add(s("M", ".3"), s("N", ".3"), "r", "+x", s("M", ".4"), s("N", ".4"), "r", "+x");
  rl.add(s("M", ".4"), s("V", ".6"), "r", "+y", s("M", ".5"), "-", "n", "+y");
  rl.add(s("L", ".c"), s("M", ".5"), "r", "+x", s("L", ".d"), s("M", ".6"), "r", "+x");
  rl.add(s("L", ".d"), s("U", ".2"), "r", "+y", s("L", ".e"), "-", "n", "+y");
  if (!rows) {
    rl.add(s("L", ".e"), s("M", ".6"), "r", "+x", nextL, nextR, "r", "+x");
    rl.add(s("N", ".4"), s("R", ".g"), "r", "+x", nextL, nextR, "r", "+x");
    return;
  }
  // Rows: M copies L's row, N copies R's row; readiness flows from the rows.
  rl.add(s("M", ".6"), "-", "n", "-y", s("M", ".7"), pf + "cL", "r", "-y");
  rl.add(s("N", ".4"), "-", "n", "-y", s("N", ".5"), pf + "cR", "r", "-y");
  for (const char* b : {"0", "1"}) {
    rl.add(s("M", ".7"), pf + "b" + b, "r", "-y", s("M", ".8"), pf + "b" + b, "r", "-y");
    rl.add(s("N", ".5"), pf + "b" + b, "r", "-y", s("N", ".6"), pf + "b" + b, "r", "-y");
  }
  rl.add(s("L", ".e"), s("M", ".8"), "r", "+x", nextL, nextR, "r", "+x");
  rl.add(s("N", ".6"), s("R", ".g"), "r", "+x", nextL, nextR, "r", "+x");
}

void addRowRules(RuleList& rl, const std::string& pf) {
  auto t = [&](std::string_view name, std::string_view bit) { return cat(pf, name, bit); };
  for (const char* b : {"0", "1"}) {
    // Left copy reads at -x, right copy at +x.
    rl.add(t("b", b), pf + "cL", "n", "+x", t("b", b), t("kL", b), "n", "+x");
    rl.add(t("kL", b), "-", "n", "-y", t("kLg", b), pf + "cL", "r", "-y");
    rl.add(t("e", b), pf + "cL", "n", "+x", t("fL", b), t("kLy", b), "n", "+x");
    rl.add(t("fL", b), "-", "n", "-y", t("b", b), pf + "e0", "r", "-y");
    rl.add(t("b", b), t("kLy", b), "n", "+x", t("b", b), t("kLz", b), "n", "+x");
    rl.add(t("kLz", b), "-", "n", "-y", t("b", b), pf + "e1", "r", "-y");

    rl.add(pf + "cR", t("b", b), "n", "+x", t("kR", b), t("b", b), "n", "+x");
    rl.add(t("kR", b), "-", "n", "-y", t("kRg", b), pf + "cR", "r", "-y");
    rl.add(pf + "cR", t("e", b), "n", "+x", t("kRy", b), t("fR", b), "n", "+x");
    rl.add(t("fR", b), "-", "n", "-y", t("b", b), pf + "e1", "r", "-y");
    rl.add(t("kRy", b), t("b", b), "n", "+x", t("kRz", b), t("b", b), "n", "+x");
    rl.add(t("kRz", b), "-", "n", "-y", t("b", b), pf + "e0", "r", "-y");
    // Completion climbs from the new end.
    for (const char* c : {"0", "1"}) {
      rl.add(t("kLg", b), t("b", c), "r", "-y", t("b", b), t("b", c), "r", "-y");
      rl.add(t("kRg", b), t("b", c), "r", "-y", t("b", b), t("b", c), "r", "-y");
    }
  }
}

}  // namespace

std::string addStraightLine(RuleList& rl, std::uint64_t n, const std::string& pf) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "line length must be positive");
  std::vector<std::string> roles;
  unsigned top = 0;
  for (unsigned k : detail::powersOf(n)) {
    top = std::max(top, k);
    if (k >= 2) {
      roles.push_back(cat(pf, "L", str(k - 1)));
      roles.push_back(pf + "r");
    } else {
      for (unsigned i = 0; i < (k == 1 ? 2u : 1u); ++i) roles.push_back(pf + "0");
    }
  }
  for (unsigned x = 1; x + 1 <= top; ++x) addStraightLevel(rl, x, pf, false);
  if (roles.size() == 1) return roles[0];
  auto g = [&](std::size_t i) { return cat(pf, "g.", str(i)); };
  const std::size_t m = roles.size();
  for (std::size_t i = 0; i + 2 < m; ++i) rl.add(g(i), "-", "n", "+x", roles[i], g(i + 1), "r", "+x");
  rl.add(g(m - 2), "-", "n", "+x", roles[m - 2], roles[m - 1], "r", "+x");
  return g(0);
}

std::string addCounter(RuleList& rl, unsigned p, const std::string& pf) {
  if (p == 0) throw Error(ErrorCode::NotPowerOfTwo, "counter needs n >= 2");
  for (unsigned x = 1; x + 1 <= p; ++x) addStraightLevel(rl, x, pf, true);
  if (p >= 2) addRowRules(rl, pf);
  const std::string top = p == 1 ? pf + "0" : cat(pf, "L", str(p - 1));
  const std::string right = p == 1 ? pf + "0" : pf + "r";
  rl.add(pf + "cs", "-", "n", "+x", pf + "cA", pf + "cB", "r", "+x");
  rl.add(pf + "cA", "-", "n", "-y", pf + "cA2", pf + "e0", "r", "-y");
  rl.add(pf + "cB", "-", "n", "-y", pf + "cB2", pf + "e1", "r", "-y");
  rl.add(pf + "cA2", pf + "cB2", "r", "+x", top, right, "r", "+x");
  return pf + "cs";
}

Configuration counterTarget(unsigned p, const std::string& pf, const std::string& backbone) {
  const std::uint64_t n = std::uint64_t{1} << p;
  Configuration c = chain(repeat(backbone, n), {0, 0}, Direction::PlusX);
  for (std::uint64_t i = 0; i < n; ++i) {
    std::vector<std::string> col{backbone};
    for (unsigned j = 0; j < p; ++j) {
      const char bit = (i >> (p - 1 - j) & 1) ? '1' : '0';
      col.push_back(cat(pf, j + 1 == p ? "e" : "b", std::string(1, bit)));
    }
    const Configuration column = chain(col, {static_cast<int>(i), 0}, Direction::MinusY);
    for (const auto& [pos, cell] : column.cells())
      if (pos.y < 0) c.place(pos, cell.state);
    for (int j = 0; j < static_cast<int>(p); ++j) c.setBond({static_cast<int>(i), -j}, Direction::MinusY, BondType::Rigid);
  }
  return c;
}

unsigned log2Exact(std::uint64_t n, ErrorCode code, std::string_view what) {
  if (n < 1 || !std::has_single_bit(n)) throw Error(code, std::string(what) + " must be a power of two");
  return static_cast<unsigned>(std::countr_zero(n));
}

}  // namespace internal

Program genCounter(std::uint64_t n) {
  const unsigned p = log2Exact(n, ErrorCode::NotPowerOfTwo, "counter size");
  if (p == 0) throw Error(ErrorCode::NotPowerOfTwo, "counter needs n >= 2");
  RuleList rl;
  const std::string s = addCounter(rl, p, "");
  TerminalSpec t{counterTarget(p, "", "0"), true, true,
                 "backbone of " + str(n) + " columns, column i holding i in binary below it"};
  return finish("counter", rl, seed(s), std::move(t), Scaling::LogSquared);
}

}  // namespace nubot::programs
