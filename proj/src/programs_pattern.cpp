#include <bit>
#include <tuple>

#include "nubot/error.hpp"
#include "nubot/programs.hpp"
#include "programs_counter.hpp"
#include "programs_grid.hpp"
#include "programs_internal.hpp"

namespace nubot::programs {

using namespace internal;

namespace {

// Layout: row i is split into strips of h = log2 n cells. Strip s of row i
// carries track A = the h bits of i (most significant at the strip start)
// and track B = the h - p bits of s (least significant at cell p, most
// significant at the strip end; cells below p are blank). Read as one tape,
// A runs left to right and B folds back right to left.

std::string ch(char c) { return std::string(1, c); }
char bit(bool b) { return b ? '1' : '0'; }
const char kSyms[] = {'0', '1', '_'};

struct Strip {
  unsigned h = 0, p = 0;
  char pos(unsigned t) const { return t == 0 ? 's' : t + 1 == h ? 'e' : 'm'; }
  std::vector<char> positions() const {
    return h >= 3 ? std::vector<char>{'s', 'm', 'e'} : std::vector<char>{'s', 'e'};
  }
  std::vector<std::pair<char, char>> adjacentPos() const {
    if (h == 2) return {{'s', 'e'}};
    std::vector<std::pair<char, char>> out{{'s', 'm'}, {'m', 'e'}};
    if (h >= 4) out.push_back({'m', 'm'});
    return out;
  }
  // A frontier about to create cell t sits on cell t - 1, or on the previous end.
  bool frontierAt(char at, unsigned t) const { return t == 0 ? at == 'e' : at == pos(t - 1); }
  std::vector<char> bSyms(unsigned t) const { return t < p ? std::vector<char>{'_'} : std::vector<char>{'0', '1'}; }
};

// Row-0 walker states.
std::string plain(char b, char pos, int par, char cp) { return cat("w.", ch(b), ch(pos), str(par), ch(cp)); }
std::string seeking(char b, char pos, int par, int pi) { return cat(plain(b, pos, par, 'u'), ".L", str(pi)); }
std::string carrying(char b, char pos, int par, char beta) { return cat(plain(b, pos, par, 'c'), ".R", ch(beta)); }
std::string frontier(char b, char pos, int par, unsigned t, bool c, bool a1, std::string_view phase) {
  return cat("f.", ch(b), ch(pos), str(par), ".", str(t), ch(bit(c)), ch(bit(a1)), ".", phase);
}
std::string wave(char b, char pos) { return cat("d.", ch(b), ch(pos)); }

// Tape phase.
std::string tapeSt(char wa, char wb, char pos) { return cat("t.", ch(wa), ch(wb), ch(pos)); }
std::string headSt(const std::string& q, char trk, char wa, char wb, char pos) {
  return cat("h.", ch(trk), ch(wa), ch(wb), ch(pos), ".", q);
}
std::string haltSt(bool acc, char wa, char wb, char pos) { return cat("k.", acc ? "b" : "w", ch(wa), ch(wb), ch(pos)); }
std::string colour(bool acc) { return acc ? "black" : "white"; }
std::string sweepSt(bool acc) { return acc ? "s.b" : "s.w"; }

std::string after(const TMSpec& tm, const std::string& q, char trk, char wa, char wb, char pos) {
  if (tm.isHalting(q)) return haltSt(tm.accept.count(q) > 0, wa, wb, pos);
  return headSt(q, trk, wa, wb, pos);
}

void addWalker(RuleList& rl, const Strip& S, const RowEngine& eng, const std::vector<std::size_t>& kindOf) {
  const unsigned h = S.h, p = S.p;
  auto kindAt = [&](char b, char pos) -> const RowKind& {
    return eng.kinds[kindOf[static_cast<std::size_t>(b == '_' ? 2 : b - '0') * 3 + (pos == 's' ? 0 : pos == 'm' ? 1 : 2)]];
  };
  std::vector<std::tuple<char, char>> cells;  // (b, pos) combinations that occur
  for (char pos : S.positions())
    for (char b : kSyms) {
      bool ok = false;
      for (unsigned t = 0; t < h; ++t)
        for (char bb : S.bSyms(t)) ok = ok || (S.pos(t) == pos && bb == b);
      if (ok) cells.emplace_back(b, pos);
    }
  std::vector<std::string> plainU;
  for (auto [b, pos] : cells)
    for (int par = 0; par < 2; ++par) plainU.push_back(plain(b, pos, par, 'u'));

  // Strip 0 from the seed.
  for (unsigned t = 0; t + 1 < h; ++t) {
    const char b = t < p ? '_' : '0';
    const std::string next =
        t + 2 < h ? cat("z.", str(t + 1)) : frontier(t + 1 < p ? '_' : '0', 'e', 0, 0, true, true, "i");
    rl.add(cat("z.", str(t)), "-", "n", "+x", plain(b, S.pos(t), 0, 'u'), next, "r", "+x");
  }

  // Frontier: idle -> emits a seeking token; received -> creates the next cell.
  for (auto [b, pos] : cells)
    for (int par = 0; par < 2; ++par)
      for (unsigned t = 0; t < h; ++t)
        for (bool c : {false, true})
          for (bool a1 : {false, true}) {
            if (!S.frontierAt(pos, t)) continue;
            const int np = t == 0 ? 1 - par : par;
            for (const std::string& x : plainU)
              rl.add(x, frontier(b, pos, par, t, c, a1, "i"), "r", "+x", x + ".L" + str(1 - np),
                     frontier(b, pos, par, t, c, a1, "w"), "r", "+x");
            for (char beta : kSyms) {
              char nb = '_';
              bool nc = c, na = a1;
              if (t >= p) {
                if (beta == '_') continue;
                const bool v = beta == '1';
                nb = bit(v != c);
                nc = v && c;
                na = a1 && nb == '1';
              } else if (beta != '_') {
                continue;
              }
              std::string made;
              if (t + 1 < h) made = frontier(nb, S.pos(t), np, t + 1, nc, na, "i");
              else if (na) made = wave(nb, 'e');
              else made = frontier(nb, 'e', np, 0, true, true, "i");
              rl.add(frontier(b, pos, par, t, c, a1, cat("r", ch(beta))), "-", "n", "+x", plain(b, pos, par, 'u'), made, "r", "+x");
            }
          }

  // Seeking and carrying tokens.
  for (auto [b, pos] : cells)
    for (int par = 0; par < 2; ++par)
      for (int pi = 0; pi < 2; ++pi) {
        const std::string me = plain(b, pos, par, 'u');
        const std::string tok = seeking(b, pos, par, pi);
        if (par != pi) {
          for (const std::string& y : plainU) rl.add(y, tok, "r", "+x", y + ".L" + str(pi), me, "r", "+x");
          continue;
        }
        if (pos == 's') {
          // Target found at the strip start; the pick hands the bit right at once.
          for (auto [b2, pos2] : cells)
            for (int par2 = 0; par2 < 2; ++par2) {
              if (pos2 == 's') continue;
              const std::string z = plain(b2, pos2, par2, 'u');
              rl.add(tok, z, "r", "+x", plain(b, pos, par, 'c'), cat(z, ".R", ch(b)), "r", "+x");
              for (unsigned t = 0; t < h; ++t)
                for (bool c : {false, true})
                  for (bool a1 : {false, true}) {
                    if (!S.frontierAt(pos2, t)) continue;
                    rl.add(tok, frontier(b2, pos2, par2, t, c, a1, "w"), "r", "+x", plain(b, pos, par, 'c'),
                           frontier(b2, pos2, par2, t, c, a1, cat("r", ch(b))), "r", "+x");
                  }
            }
          continue;
        }
        for (auto [b0, pos0] : cells) {
          if (pos0 == 'e') continue;
          rl.add(plain(b0, pos0, pi, 'c'), tok, "r", "+x", plain(b0, pos0, pi, 'c'), carrying(b, pos, par, b), "r", "+x");
          rl.add(plain(b0, pos0, pi, 'u'), tok, "r", "+x", seeking(b0, pos0, pi, pi), me, "r", "+x");
        }
      }
  for (auto [b, pos] : cells)
    for (int par = 0; par < 2; ++par)
      for (char beta : kSyms) {
        const std::string from = carrying(b, pos, par, beta);
        const std::string left = pos == 'e' ? wave(b, pos) : plain(b, pos, par, 'c');
        for (auto [b2, pos2] : cells)
          for (int par2 = 0; par2 < 2; ++par2) {
            const std::string z = plain(b2, pos2, par2, 'u');
            rl.add(from, z, "r", "+x", left, cat(z, ".R", ch(beta)), "r", "+x");
            for (unsigned t = 0; t < h; ++t)
              for (bool c : {false, true})
                for (bool a1 : {false, true}) {
                  if (!S.frontierAt(pos2, t)) continue;
                  rl.add(from, frontier(b2, pos2, par2, t, c, a1, "w"), "r", "+x", left,
                         frontier(b2, pos2, par2, t, c, a1, cat("r", ch(beta))), "r", "+x");
                }
          }
      }
  // Carried bits pass through uncopied cells.
  for (auto [b, pos] : cells)
    for (int par = 0; par < 2; ++par)
      for (char beta : kSyms) {
        const std::string from = cat(plain(b, pos, par, 'u'), ".R", ch(beta));
        for (auto [b2, pos2] : cells)
          for (int par2 = 0; par2 < 2; ++par2) {
            const std::string z = plain(b2, pos2, par2, 'u');
            rl.add(from, z, "r", "+x", plain(b, pos, par, 'u'), cat(z, ".R", ch(beta)), "r", "+x");
            for (unsigned t = 0; t < h; ++t)
              for (bool c : {false, true})
                for (bool a1 : {false, true}) {
                  if (!S.frontierAt(pos2, t)) continue;
                  rl.add(from, frontier(b2, pos2, par2, t, c, a1, "w"), "r", "+x", plain(b, pos, par, 'u'),
                         frontier(b2, pos2, par2, t, c, a1, cat("r", ch(beta))), "r", "+x");
                }
          }
      }

  // A finished strip hands its cells to the row engine, end first.
  for (auto [b, pos] : cells) {
    const std::string go = eng.go(kindAt(b, pos), '0');
    if (pos == 's') {
      rl.add(wave(b, pos), "-", "n", "-y", go, "-", "n", "-y");
      continue;
    }
    for (auto [b0, pos0] : cells) {
      if (pos0 == 'e') continue;
      for (int par = 0; par < 2; ++par)
        for (char cp : {'u', 'c'}) rl.add(plain(b0, pos0, par, cp), wave(b, pos), "r", "+x", wave(b0, pos0), go, "r", "+x");
    }
  }
}

void addStripMachine(RuleList& rl, const TMSpec& tm, const Strip& S) {
  const auto adj = S.adjacentPos();
  auto leftOf = [&](char pos) {
    std::vector<char> out;
    for (auto [l, r] : adj)
      if (r == pos) out.push_back(l);
    return out;
  };
  auto rightOf = [&](char pos) {
    std::vector<char> out;
    for (auto [l, r] : adj)
      if (l == pos) out.push_back(r);
    return out;
  };
  for (const auto& [key, tr] : tm.delta) {
    const auto& [q, a] = key;
    if (a == TapeSymbol::Marker || tm.isHalting(q)) continue;
    const char sym = toChar(a);
    const char w = toChar(tr.write);
    const bool right = tr.move == HeadMove::Right;
    for (char P : S.positions())
      for (char o : kSyms) {
        // Track A: the head reads wa.
        {
          const std::string me = headSt(q, 'A', sym, o, P);
          if (right && P != 'e') {
            for (char P2 : rightOf(P))
              for (char x2 : kSyms)
                for (char y2 : kSyms)
                  rl.add(me, tapeSt(x2, y2, P2), "r", "+x", tapeSt(w, o, P), after(tm, tr.next, 'A', x2, y2, P2), "r", "+x");
          } else if (right) {
            for (char P0 : leftOf(P))
              for (char x0 : kSyms)
                for (char y0 : kSyms)
                  rl.add(tapeSt(x0, y0, P0), me, "r", "+x", tapeSt(x0, y0, P0), after(tm, tr.next, 'B', w, o, P), "r", "+x");
          } else if (P != 's') {
            for (char P0 : leftOf(P))
              for (char x0 : kSyms)
                for (char y0 : kSyms)
                  rl.add(tapeSt(x0, y0, P0), me, "r", "+x", after(tm, tr.next, 'A', x0, y0, P0), tapeSt(w, o, P), "r", "+x");
          } else {
            for (char P2 : rightOf(P))
              for (char x2 : kSyms)
                for (char y2 : kSyms)
                  rl.add(me, tapeSt(x2, y2, P2), "r", "+x", after(tm, tr.next, 'A', w, o, P), tapeSt(x2, y2, P2), "r", "+x");
          }
        }
        // Track B: the head reads wb; tape order runs right to left.
        {
          const std::string me = headSt(q, 'B', o, sym, P);
          if (right && P != 's') {
            for (char P0 : leftOf(P))
              for (char x0 : kSyms)
                for (char y0 : kSyms)
                  rl.add(tapeSt(x0, y0, P0), me, "r", "+x", after(tm, tr.next, 'B', x0, y0, P0), tapeSt(o, w, P), "r", "+x");
          } else if (!right && P != 'e') {
            for (char P2 : rightOf(P))
              for (char x2 : kSyms)
                for (char y2 : kSyms)
                  rl.add(me, tapeSt(x2, y2, P2), "r", "+x", tapeSt(o, w, P), after(tm, tr.next, 'B', x2, y2, P2), "r", "+x");
          } else if (!right) {
            for (char P0 : leftOf(P))
              for (char x0 : kSyms)
                for (char y0 : kSyms)
                  rl.add(tapeSt(x0, y0, P0), me, "r", "+x", tapeSt(x0, y0, P0), after(tm, tr.next, 'A', o, w, P), "r", "+x");
          }
        }
      }
  }
  // The halted head walks to the strip start, then colours left to right.
  for (bool acc : {false, true})
    for (char P : S.positions())
      for (char x : kSyms)
        for (char y : kSyms) {
          const std::string me = haltSt(acc, x, y, P);
          if (P != 's') {
            for (char P0 : leftOf(P))
              for (char x0 : kSyms)
                for (char y0 : kSyms)
                  rl.add(tapeSt(x0, y0, P0), me, "r", "+x", haltSt(acc, x0, y0, P0), tapeSt(x, y, P), "r", "+x");
            continue;
          }
          for (char P2 : rightOf(P))
            for (char x2 : kSyms)
              for (char y2 : kSyms)
                rl.add(me, tapeSt(x2, y2, P2), "r", "+x", colour(acc), P2 == 'e' ? colour(acc) : sweepSt(acc), "r", "+x");
        }
  for (bool acc : {false, true})
    for (char P2 : S.positions()) {
      if (P2 == 's') continue;
      for (char x2 : kSyms)
        for (char y2 : kSyms)
          rl.add(sweepSt(acc), tapeSt(x2, y2, P2), "r", "+x", colour(acc), P2 == 'e' ? colour(acc) : sweepSt(acc), "r", "+x");
    }
  for (bool a : {false, true})
    for (bool b : {false, true}) rl.add(colour(a), colour(b), "n", "+x", colour(a), colour(b), "r", "+x");
}

unsigned stripHeight(std::uint64_t n) {
  const unsigned h = log2Exact(n, ErrorCode::NotDoublePowerOfTwo, "pattern side");
  if (h < 2 || !std::has_single_bit(h))
    throw Error(ErrorCode::NotDoublePowerOfTwo, "pattern side must be 2^(2^p) with p >= 1");
  if (h > 16) throw Error(ErrorCode::TooLarge, "pattern side above 2^16");
  return h;
}

std::string bitsMsb(std::uint64_t v, unsigned width) {
  std::string s;
  for (unsigned j = width; j-- > 0;) s += (v >> j & 1) ? '1' : '0';
  return s;
}

}  // namespace

namespace detail {

std::vector<std::vector<bool>> patternColours(const TMSpec& tm, std::uint64_t n) {
  const unsigned h = stripHeight(n);
  const unsigned p = static_cast<unsigned>(std::countr_zero(h));
  const std::uint64_t strips = n / h;
  std::vector<std::vector<bool>> out(n, std::vector<bool>(n));
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t s = 0; s < strips; ++s) {
      const TMResult r = interpret(tm, bitsMsb(i, h) + bitsMsb(s, h - p));
      if (r.outcome != TMOutcome::Accept && r.outcome != TMOutcome::Reject)
        throw Error(ErrorCode::InvalidArgument, "machine does not halt on pixel input");
      if (r.extent > 2 * h) throw Error(ErrorCode::InvalidArgument, "machine needs more than 2 log2 n tape cells");
      for (unsigned t = 0; t < h; ++t) out[i][s * h + t] = r.outcome == TMOutcome::Accept;
    }
  return out;
}

}  // namespace detail

Program genPattern(const TMSpec& tm, std::uint64_t n) {
  const unsigned h = stripHeight(n);
  const Strip S{h, static_cast<unsigned>(std::countr_zero(h))};
  const auto colours = detail::patternColours(tm, n);

  RowEngine eng;
  eng.pf = "r.";
  std::vector<std::size_t> kindOf(9, 0);
  for (char b : kSyms)
    for (char pos : {'s', 'm', 'e'}) {
      kindOf[static_cast<std::size_t>(b == '_' ? 2 : b - '0') * 3 + (pos == 's' ? 0 : pos == 'm' ? 1 : 2)] = eng.kinds.size();
      eng.kinds.push_back(RowKind{cat(ch(b), ch(pos)), pos == 's', pos == 'e', true, eng.kinds.size()});
    }
  for (unsigned t = 0; t + 1 < h; ++t)
    for (char b : S.bSyms(t))
      for (char b2 : S.bSyms(t + 1))
        eng.adjacent.emplace_back(kindOf[static_cast<std::size_t>(b == '_' ? 2 : b - '0') * 3 + (t == 0 ? 0 : 1)],
                                  kindOf[static_cast<std::size_t>(b2 == '_' ? 2 : b2 - '0') * 3 + (t + 2 == h ? 2 : 1)]);
  const std::string q0 = tm.start;
  eng.tape = [&](const RowKind& k, char a, bool) {
    const char b = k.name[0], pos = k.name[1];
    if (pos != 's') return tapeSt(a, b, pos);
    return after(tm, q0, 'A', a, b, pos);
  };

  RuleList rl;
  addWalker(rl, S, eng, kindOf);
  addRowCopy(rl, eng);
  addStripMachine(rl, tm, S);

  Configuration target;
  const int N = static_cast<int>(n);
  for (int y = 0; y < N; ++y)
    for (int x = 0; x < N; ++x) target.place({x, y}, StateId::of(colour(colours[y][x])));
  for (int y = 0; y < N; ++y)
    for (int x = 0; x < N; ++x) {
      if (x + 1 < N) target.setBond({x, y}, Direction::PlusX, BondType::Rigid);
      if (y + 1 < N) target.setBond({x, y}, Direction::PlusY, BondType::Rigid);
    }
  TerminalSpec t{std::move(target), true, true,
                 "rigid " + str(n) + "x" + str(n) + " block; each " + str(h) + "-cell strip coloured black or white"};
  return finish("pattern", rl, seed("z.0"), std::move(t), Scaling::Custom);
}

}  // namespace nubot::programs
