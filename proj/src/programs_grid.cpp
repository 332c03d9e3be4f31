#include "programs_grid.hpp"

namespace nubot::programs::internal {

namespace {

std::string ch(char c) { return std::string(1, c); }
char bit(bool b) { return b ? '1' : '0'; }

struct Names {
  const RowEngine& e;
  std::string u(const RowKind& k, char a) const { return cat(e.pf, "u.", k.name, ".", ch(a)); }
  std::string res(const RowKind& k, char a, bool c, bool o) const {
    return cat(e.pf, "v.", k.name, ".", ch(a), ch(bit(c)), ch(bit(o)));
  }
  std::string pass(const RowKind& k, char a, bool go) const { return cat(e.pf, "p.", k.name, ".", ch(a), go ? "g" : "l"); }
  std::string settle(const RowKind& k, char a, bool go) const { return go ? e.go(k, a) : e.tape(k, a, true); }
};

}  // namespace

std::vector<char> bitsOf(const RowKind& k) { return k.hasA ? std::vector<char>{'0', '1'} : std::vector<char>{'x'}; }

void addRowCopy(RuleList& rl, const RowEngine& e) {
  const Names nm{e};
  // Creation; the segment end knows its carry-in is 1.
  for (const RowKind& k : e.kinds) {
    const RowKind& up = e.kinds[k.up];
    for (char a : bitsOf(k)) {
      std::string fresh;
      if (!up.end) {
        fresh = nm.u(up, a);
      } else if (up.hasA) {
        const bool v = a == '0';
        fresh = nm.res(up, bit(v), a == '1', v);
      } else {
        fresh = nm.res(up, 'x', true, true);
      }
      rl.add(e.go(k, a), "-", "n", "+y", e.tape(k, a, false), fresh, "r", "+y");
    }
  }
  for (auto [li, ri] : e.adjacent) {
    const RowKind& l = e.kinds[li];
    const RowKind& r = e.kinds[ri];
    for (char a2 : bitsOf(r))
      for (bool c2 : {false, true})
        for (bool o2 : {false, true}) {
          const std::string right = nm.res(r, a2, c2, o2);
          for (char a : bitsOf(l)) {
            if (!l.end) {
              // Resolve l from its right neighbour's carry.
              const bool lb = a == '1';
              const char na = l.hasA ? bit(lb != c2) : 'x';
              const bool nc = l.hasA ? (lb && c2) : c2;
              const bool no = l.hasA ? ((lb != c2) && o2) : o2;
              rl.add(nm.u(l, a), right, "n", "+x", nm.res(l, na, nc, no), right, "r", "+x");
            }
            // The settled signal runs left to right once the start resolves.
            for (bool go : {false, true}) {
              const std::string next = r.end ? nm.settle(r, a2, go) : nm.pass(r, a2, go);
              if (l.start) {
                for (bool c : {false, true}) rl.add(nm.res(l, a, c, !go), right, "r", "+x", nm.settle(l, a, go), next, "r", "+x");
              } else {
                rl.add(nm.pass(l, a, go), right, "r", "+x", nm.settle(l, a, go), next, "r", "+x");
              }
            }
          }
        }
  }
}

}  // namespace nubot::programs::internal
