#include <algorithm>
#include <bit>

#include "nubot/error.hpp"
#include "nubot/programs.hpp"
#include "programs_counter.hpp"
#include "programs_grid.hpp"
#include "programs_internal.hpp"
#include "programs_line.hpp"

namespace nubot::programs {

using namespace internal;

namespace {

// Canvas row b has m = sqrt(n) cells. Zones along a row: A (bits of b,
// L = its last bit), C (bits of the column index fed to the machine, D = its
// last bit), X (blank work space). One machine run per pixel, left to right.

std::string ch(char c) { return std::string(1, c); }
const char kSyms[] = {'0', '1', '_'};

struct Canvas {
  unsigned m = 0, k = 0;
  char zone(unsigned t) const {
    if (t + 1 < k) return 'A';
    if (t + 1 == k) return 'L';
    if (t + 1 < 2 * k) return 'C';
    if (t + 1 == 2 * k) return 'D';
    return 'X';
  }
  char pos(unsigned t) const { return t == 0 ? 's' : t + 1 == m ? 'e' : 'm'; }
};

struct Cell {
  char zone, pos, par, I, W, r, f;
  std::string data() const { return std::string{zone, pos, par, I, W, r, f}; }
  bool hasA() const { return zone == 'A' || zone == 'L'; }
};

struct Plan {
  Canvas cv;
  std::vector<std::pair<char, char>> zp;                                  // zone, pos
  std::vector<std::pair<std::size_t, std::size_t>> adj;                   // indices into zp
  std::vector<Cell> cells(std::size_t i, char par) const {
    const auto [z, p] = zp[i];
    std::vector<Cell> out;
    const bool bits = z != 'X';
    for (char I : bits ? std::vector<char>{'0', '1'} : std::vector<char>{'_'})
      for (char W : kSyms)
        for (char r : {'?', 'y', 'n'})
          for (char f : p == 's' ? std::vector<char>{'n', 'b', 't'} : std::vector<char>{'-'}) out.push_back({z, p, par, I, W, r, f});
    return out;
  }
  // Every (left, right) neighbouring pair of tape cells.
  template <typename F>
  void pairs(F&& fn) const {
    for (auto [li, ri] : adj)
      for (char par : {'0', '1'})
        for (const Cell& l : cells(li, par))
          for (const Cell& r : cells(ri, par)) fn(l, r);
  }
  template <typename F>
  void each(F&& fn) const {
    for (std::size_t i = 0; i < zp.size(); ++i)
      for (char par : {'0', '1'})
        for (const Cell& c : cells(i, par)) fn(c);
  }
};

std::string T(const Cell& c) { return "c." + c.data(); }
std::string tok(std::string_view kind, const Cell& c) { return cat(kind, ".", c.data()); }
std::string head(const std::string& q, const Cell& c) { return cat("h.", c.data(), ".", q); }
Cell withW(Cell c, char w) { c.W = w; return c; }
Cell withR(Cell c, char r) { c.r = r; return c; }
Cell reset(Cell c) { c.W = c.I; return c; }

std::string decided(const Cell& c) { return cat("q.", ch(c.r), ch(c.pos), ch(c.par), ch(c.f)); }

std::string startHead(const TMSpec& tm, const Cell& c) {
  if (tm.isHalting(tm.start)) return tok(tm.accept.count(tm.start) ? "ky" : "kn", c);
  return head(tm.start, c);
}

std::string afterMove(const TMSpec& tm, const std::string& q, const Cell& c) {
  if (tm.isHalting(q)) return tok(tm.accept.count(q) ? "ky" : "kn", c);
  return head(q, c);
}

// Increment (even rows) or decrement (odd rows) at a C-zone cell.
std::string stepCounter(const Cell& c) {
  Cell n = c;
  const bool one = c.I == '1';
  n.I = one ? '0' : '1';
  const bool more = c.par == '0' ? one : !one;
  return tok(more ? "n" : "g", n);
}

// After a result lands on c: finish the row, or move on to the counter.
std::string afterDelivery(const Cell& c) {
  if (c.pos == 'e') return tok("F", c);
  if (c.zone == 'D') return stepCounter(c);
  return tok("i", c);
}

void addMachine(RuleList& rl, const TMSpec& tm, const Plan& P) {
  for (const auto& [key, tr] : tm.delta) {
    const auto& [q, a] = key;
    if (a == TapeSymbol::Marker || tm.isHalting(q)) continue;
    const char sym = toChar(a), w = toChar(tr.write);
    if (tr.move == HeadMove::Right) {
      P.pairs([&](const Cell& l, const Cell& r) {
        if (l.W == sym) rl.add(head(q, l), T(r), "r", "+x", T(withW(l, w)), afterMove(tm, tr.next, r), "r", "+x");
      });
    } else {
      P.pairs([&](const Cell& l, const Cell& r) {
        if (r.W == sym) rl.add(T(l), head(q, r), "r", "+x", afterMove(tm, tr.next, l), T(withW(r, w)), "r", "+x");
        if (l.pos == 's' && l.W == sym)
          rl.add(head(q, l), T(r), "r", "+x", afterMove(tm, tr.next, withW(l, w)), T(r), "r", "+x");
      });
    }
  }
}

void addCycle(RuleList& rl, const TMSpec& tm, const Plan& P) {
  P.pairs([&](const Cell& l, const Cell& r) {
    for (char res : {'y', 'n'}) {
      const std::string K = res == 'y' ? "ky" : "kn";
      // The carrier looks for the first undecided cell.
      if (l.r != '?') rl.add(tok(K, l), T(r), "r", "+x", T(l), tok(K, r), "r", "+x");
      if (r.r == '?' && l.r == '?') rl.add(T(l), tok(K, r), "r", "+x", tok(K, l), T(r), "r", "+x");
      if (r.r == '?' && l.r != '?') rl.add(T(l), tok(K, r), "r", "+x", T(l), afterDelivery(withR(r, res)), "r", "+x");
      if (l.pos == 's' && l.r == '?') rl.add(tok(K, l), T(r), "r", "+x", afterDelivery(withR(l, res)), T(r), "r", "+x");
    }
    // Walk to the counter's last bit.
    if (l.zone != 'D' && r.zone != 'X')
      rl.add(tok("i", l), T(r), "r", "+x", T(l), r.zone == 'D' ? stepCounter(r) : tok("i", r), "r", "+x");
    if (r.zone == 'X') rl.add(T(l), tok("i", r), "r", "+x", l.zone == 'D' ? stepCounter(l) : tok("i", l), T(r), "r", "+x");
    // Carry or borrow moves left.
    if (r.zone == 'C' || r.zone == 'D') rl.add(T(l), tok("n", r), "r", "+x", stepCounter(l), T(r), "r", "+x");
    // Reset the work track right to left, then restart the machine.
    rl.add(tok("g", l), T(r), "r", "+x", T(l), tok("g", r), "r", "+x");
    if (r.pos == 'e') rl.add(T(l), tok("g", r), "r", "+x", tok("b", reset(l)), T(reset(r)), "r", "+x");
    rl.add(T(l), tok("b", r), "r", "+x", tok("b", reset(l)), T(r), "r", "+x");
    if (l.pos == 's') rl.add(tok("b", l), T(r), "r", "+x", startHead(tm, l), T(r), "r", "+x");
    // Row finished: hand every cell its decided state.
    rl.add(T(l), tok("F", r), "r", "+x", tok("F", l), decided(r), "r", "+x");
  });
}

void addCarving(RuleList& rl, const Plan& P) {
  std::vector<Cell> dec;
  for (char r : {'y', 'n'})
    for (char pos : {'s', 'm', 'e'})
      for (char par : {'0', '1'})
        for (char f : pos == 's' ? std::vector<char>{'n', 'b', 't'} : std::vector<char>{'-'})
          dec.push_back({'-', pos, par, '-', '-', r, f});
  auto token = [](char mode, const Cell& c) { return cat("x.", ch(mode), ".", ch(c.r), ch(c.pos), ch(c.par), ch(c.f)); };
  auto succ = [](const Cell& c) -> std::string {
    if (c.par == '0') return c.pos == 'e' ? "+y" : "+x";
    if (c.pos != 's') return "-x";
    return c.f == 't' ? "" : "+y";
  };
  // The bottom row's start begins carving as it settles. In odd rows the
  // carving token may already have reached (or removed) the right neighbour.
  std::vector<std::string> carved{"px", "-"};
  for (const Cell& c : dec) {
    carved.push_back(token('h', c));
    carved.push_back(token('m', c));
  }
  for (const char* d : {"+x", "-x", "+y"}) carved.push_back(cat("x.p", d));
  P.each([&](const Cell& l) {
    if (l.pos != 's' || l.r == '?') return;
    const std::string settled = l.f == 'b' ? token(l.r == 'n' ? 'h' : 'm', l) : decided(l);
    for (const Cell& r : dec)
      if (r.pos != 's' && r.par == l.par) rl.add(tok("F", l), decided(r), "r", "+x", settled, decided(r), "r", "+x");
    if (l.par == '1')
      for (const std::string& r : carved) rl.add(tok("F", l), r, r == "-" ? "n" : "r", "+x", settled, r, r == "-" ? "n" : "r", "+x");
  });
  for (const Cell& c : dec) {
    const std::string d = succ(c);
    if (d.empty()) {
      if (c.r == 'n') rl.add(token('h', c), "-", "n", "+y", "-", "-", "n", "+y");
      rl.add(token('m', c), "-", "n", "+y", c.r == 'y' ? "px" : "-", "-", "n", "+y");
      continue;
    }
    for (const Cell& y : dec) {
      const std::string next = y.r == 'n' ? token('h', y) : token('m', y);
      if (c.r == 'n') rl.add(token('h', c), decided(y), "r", d, "-", next, "n", d);
      const std::string mid = token('m', y);
      if (c.r == 'y') rl.add(token('m', c), decided(y), "r", d, "px", mid, "r", d);
      else if (y.r == 'y') rl.add(token('m', c), decided(y), "r", d, "-", mid, "n", d);
      else rl.add(token('m', c), decided(y), "r", d, cat("x.p", d), mid, "r", d);
    }
    // A pending run empties from its far end back toward the shape.
    rl.add(cat("x.p", d), "-", "n", d, "-", "-", "n", d);
  }
}

unsigned canvasBits(std::uint64_t n) {
  const unsigned e = log2Exact(n, ErrorCode::NotPowerOfTwo, "shape size");
  if (e < 2 || e % 2 != 0) throw Error(ErrorCode::NotPowerOfTwo, "shape size must be 4^k with k >= 1");
  if (e > 20) throw Error(ErrorCode::TooLarge, "shape size above 2^20");
  return e / 2;
}

}  // namespace

namespace detail {

GridPoint snakeCell(std::uint64_t i, std::uint64_t side) {
  if (side == 0 || i >= side * side) throw Error(ErrorCode::InvalidArgument, "index outside the canvas");
  const std::uint64_t b = i / side, a = i % side;
  return {static_cast<int>(b % 2 == 0 ? a : side - 1 - a), static_cast<int>(b)};
}

std::set<GridPoint> shapePixels(const TMSpec& tm, std::uint64_t n) {
  const unsigned k = canvasBits(n);
  const std::uint64_t m = std::uint64_t{1} << k;
  std::set<GridPoint> out;
  for (std::uint64_t i = 0; i < n; ++i) {
    std::string in;
    for (unsigned j = 2 * k; j-- > 0;) in += (i >> j & 1) ? '1' : '0';
    const TMResult r = interpret(tm, in);
    if (r.outcome != TMOutcome::Accept && r.outcome != TMOutcome::Reject)
      throw Error(ErrorCode::InvalidArgument, "machine does not halt on pixel " + str(i));
    if (r.extent > m) throw Error(ErrorCode::InvalidArgument, "machine needs more than sqrt(n) tape cells");
    if (r.outcome == TMOutcome::Accept) out.insert(snakeCell(i, m));
  }
  return out;
}

}  // namespace detail

Program genShape(const TMSpec& tm, std::uint64_t n, const std::optional<std::set<GridPoint>>& expectedPixels) {
  const unsigned k = canvasBits(n);
  const std::set<GridPoint> pixels = detail::shapePixels(tm, n);
  if (expectedPixels && *expectedPixels != pixels)
    throw Error(ErrorCode::InvalidArgument, "machine decides a different pixel set than expected");

  Plan P;
  P.cv = Canvas{1u << k, k};
  const unsigned m = P.cv.m;
  for (unsigned t = 0; t < m; ++t) {
    const std::pair<char, char> z{P.cv.zone(t), P.cv.pos(t)};
    if (std::find(P.zp.begin(), P.zp.end(), z) == P.zp.end()) P.zp.push_back(z);
  }
  auto zpIndex = [&](unsigned t) {
    const std::pair<char, char> z{P.cv.zone(t), P.cv.pos(t)};
    return static_cast<std::size_t>(std::find(P.zp.begin(), P.zp.end(), z) - P.zp.begin());
  };
  for (unsigned t = 0; t + 1 < m; ++t) {
    const std::pair<std::size_t, std::size_t> e{zpIndex(t), zpIndex(t + 1)};
    if (std::find(P.adj.begin(), P.adj.end(), e) == P.adj.end()) P.adj.push_back(e);
  }

  // Row engine kinds: zone/pos x row parity x bottom-row flag on the start.
  RowEngine eng;
  eng.pf = "r.";
  auto kindIndex = [&](std::size_t z, int par, bool bottom) { return (z * 2 + par) * 2 + (bottom ? 1 : 0); };
  for (std::size_t z = 0; z < P.zp.size(); ++z)
    for (int par = 0; par < 2; ++par)
      for (int bottom = 0; bottom < 2; ++bottom) {
        const auto [zone, pos] = P.zp[z];
        eng.kinds.push_back(RowKind{cat(ch(zone), ch(pos), str(par), bottom ? "b" : ""), pos == 's', pos == 'e',
                                    zone == 'A' || zone == 'L', kindIndex(z, 1 - par, false)});
      }
  for (auto [li, ri] : P.adj)
    for (int par = 0; par < 2; ++par)
      for (int bottom = 0; bottom < 2; ++bottom)
        eng.adjacent.emplace_back(kindIndex(li, par, bottom), kindIndex(ri, par, false));
  eng.tape = [&](const RowKind& kd, char a, bool top) {
    const char zone = kd.name[0], pos = kd.name[1], par = kd.name[2];
    const bool bottom = kd.name.size() > 3;
    const char I = kd.hasA ? a : zone == 'X' ? '_' : par;
    const Cell c{zone, pos, par, I, I, '?', pos == 's' ? (top ? 't' : bottom ? 'b' : 'n') : '-'};
    return pos == 's' ? startHead(tm, c) : T(c);
  };

  RuleList rl;
  // Row 0: a doubling line of m cells, synchronized, then numbered left to right.
  const std::string seedState = addStraightLine(rl, m, "a");
  addSyncRules(rl, SyncStates{"a0", "V", "y", Direction::MinusY, Direction::MinusW});
  auto assign = [&](unsigned t) { return cat("as.", str(std::min(t, 2 * k))); };
  auto rowZeroGo = [&](unsigned t, bool end) {
    const unsigned tt = std::min(t, 2 * k);
    const char zone = P.cv.zone(tt);
    const char pos = t == 0 ? 's' : end ? 'e' : 'm';
    const std::pair<char, char> z{zone, pos};
    const auto zi = static_cast<std::size_t>(std::find(P.zp.begin(), P.zp.end(), z) - P.zp.begin());
    if (zi == P.zp.size()) return std::string();
    const RowKind& kd = eng.kinds[kindIndex(zi, 0, t == 0)];
    return eng.go(kd, kd.hasA ? '0' : 'x');
  };
  rl.add("V", "-", "n", "-x", assign(0), "-", "n", "-x");
  for (unsigned t = 0; t <= 2 * k; ++t) {
    const std::string mid = rowZeroGo(t, false), last = rowZeroGo(t, true);
    if (!mid.empty()) rl.add(assign(t), "V", "r", "+x", mid, assign(t + 1), "r", "+x");
    if (!last.empty() && t > 0) rl.add(assign(t), "-", "n", "+x", last, "-", "n", "+x");
  }
  addRowCopy(rl, eng);
  addMachine(rl, tm, P);
  addCycle(rl, tm, P);
  addCarving(rl, P);

  Configuration target;
  for (const GridPoint& q : pixels) target.place(q, StateId::of("px"));
  for (const GridPoint& q : pixels)
    for (Direction d : {Direction::PlusX, Direction::PlusY})
      if (pixels.count(q + vec(d))) target.setBond(q, d, BondType::Rigid);
  TerminalSpec t{std::move(target), true, true,
                 str(pixels.size()) + " pixels of a " + str(m) + "x" + str(m) + " canvas in state px"};
  return finish("shape", rl, seed(seedState), std::move(t), Scaling::Custom);
}

}  // namespace nubot::programs
