#include "nubot/kinetics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_set>

#include "nubot/error.hpp"

namespace nubot {

namespace {

/// Greedy closure shared by movable and agitation sets. `base` == nullopt runs
/// without a base monomer. Returns false iff the base entered a blocking set.
bool expand(const Configuration& c, GridPoint a, std::optional<GridPoint> base, Direction v,
            std::vector<GridPoint>& members, MovableTrace* trace) {
  const GridPoint dv = vec(v);
  std::unordered_set<GridPoint> inSet;
  inSet.reserve(64);
  inSet.insert(a);
  members.assign(1, a);
  std::vector<GridPoint> frontier{a};
  std::vector<GridPoint> blocking;
  std::unordered_set<GridPoint> blockingSeen;
  while (true) {
    if (trace) trace->frontiers.push_back(frontier);
    blocking.clear();
    blockingSeen.clear();
    auto block = [&](GridPoint y) {
      if (!inSet.count(y) && blockingSeen.insert(y).second) blocking.push_back(y);
    };
    for (GridPoint x : frontier) {
      const auto* cell = c.cell(x);
      const GridPoint target = x + dv;
      if (c.occupied(target)) block(target);
      for (Direction d : kDirections) {
        const BondType b = cell->bonds[index(d)];
        if (b == BondType::Null) continue;
        const GridPoint y = x + vec(d);
        if (base && x == a && y == *base) continue;  // the arm-base bond is ignored
        if (b == BondType::Rigid || hexDistance(target, y) != 1) block(y);
      }
    }
    if (trace) trace->blocking.push_back(blocking);
    if (base && blockingSeen.count(*base)) {
      if (trace) trace->blockedByBase = true;
      members.clear();
      return false;
    }
    if (blocking.empty()) break;
    for (GridPoint y : blocking) {
      inSet.insert(y);
      members.push_back(y);
    }
    frontier.swap(blocking);
  }
  std::sort(members.begin(), members.end());
  return true;
}

void requireMonomer(const Configuration& c, GridPoint p) {
  if (!c.occupied(p)) throw Error(ErrorCode::MonomerNotFound, toString(p));
}

/// Blocking digraph edge test used by the linear-time stability check.
template <typename F>
void forEachBlocker(const Configuration& c, GridPoint x, const Configuration::Cell& cell,
                    GridPoint dv, F&& f) {
  const GridPoint target = x + dv;
  if (c.occupied(target)) f(target);
  for (Direction d : kDirections) {
    const BondType b = cell.bonds[index(d)];
    if (b == BondType::Null) continue;
    const GridPoint y = x + vec(d);
    if (b == BondType::Rigid || hexDistance(target, y) != 1) f(y);
  }
}

}  // namespace

std::vector<GridPoint> movableSet(const Configuration& c, GridPoint arm, GridPoint base,
                                  Direction v, MovableTrace* trace) {
  requireMonomer(c, arm);
  requireMonomer(c, base);
  if (hexDistance(arm, base) != 1)
    throw Error(ErrorCode::NotAdjacent, toString(arm) + " / " + toString(base));
  std::vector<GridPoint> out;
  expand(c, arm, base, v, out, trace);
  return out;
}

std::vector<GridPoint> agitationSet(const Configuration& c, GridPoint a, Direction v) {
  requireMonomer(c, a);
  std::vector<GridPoint> out;
  expand(c, a, std::nullopt, v, out, nullptr);
  return out;
}

bool isStable(const Configuration& c) {
  if (c.size() <= 1) return true;
  // Stable iff, for every direction, the blocking digraph is strongly
  // connected: every agitation set is then the whole configuration.
  const auto positions = c.positions();
  std::unordered_map<GridPoint, std::size_t> id;
  id.reserve(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) id.emplace(positions[i], i);
  const std::size_t n = positions.size();
  for (Direction v : kDirections) {
    std::vector<std::vector<std::size_t>> fwd(n), rev(n);
    for (std::size_t i = 0; i < n; ++i) {
      forEachBlocker(c, positions[i], *c.cell(positions[i]), vec(v), [&](GridPoint y) {
        const std::size_t j = id.at(y);
        fwd[i].push_back(j);
        rev[j].push_back(i);
      });
    }
    for (const auto* adj : {&fwd, &rev}) {
      std::vector<char> seen(n, 0);
      std::vector<std::size_t> stack{0};
      seen[0] = 1;
      std::size_t count = 1;
      while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        for (std::size_t j : (*adj)[i])
          if (!seen[j]) {
            seen[j] = 1;
            ++count;
            stack.push_back(j);
          }
      }
      if (count != n) return false;
    }
  }
  return true;
}

MovementGeometry movementGeometry(const Rule& r, const Event& e) {
  const GridPoint u = vec(r.lhs.dir);
  const GridPoint up = vec(r.rhs.dir);
  if (e.arm == Arm::S2) {
    auto v = directionBetween({0, 0}, up - u);
    return {e.p2, e.p1, *v};
  }
  auto v = directionBetween({0, 0}, u - up);
  return {e.p1, e.p2, *v};
}

namespace {

bool lhsMatches(const Configuration& c, const Rule& r, const Event& e) {
  if (directionBetween(e.p1, e.p2) != r.lhs.dir) return false;
  if (c.stateAt(e.p1) != r.lhs.s1 || c.stateAt(e.p2) != r.lhs.s2) return false;
  if (r.lhs.s1.isEmpty() || r.lhs.s2.isEmpty()) return true;
  return c.bond(e.p1, r.lhs.dir) == r.lhs.bond;
}

/// Applies e, optionally reporting every position whose cell may have changed.
void applyTracked(Configuration& c, const RuleSet& rs, const Event& e,
                  std::vector<GridPoint>* touched) {
  auto touchAround = [&](GridPoint p) {
    if (!touched) return;
    touched->push_back(p);
    for (GridPoint q : neighbors(p)) touched->push_back(q);
  };
  if (e.kind == EventKind::Agitation) {
    requireMonomer(c, e.p1);
    const auto set = agitationSet(c, e.p1, e.agitation);
    for (GridPoint p : set) {
      touchAround(p);
      touchAround(p + vec(e.agitation));
    }
    c.translateSubset(set, vec(e.agitation));
    return;
  }
  const Rule& r = rs[e.rule];
  if (!lhsMatches(c, r, e)) throw Error(ErrorCode::StaleEvent, "lhs no longer matches at " + toString(e.p1));
  if (e.kind == EventKind::NonMovement) {
    if (r.isMovement()) throw Error(ErrorCode::InvalidArgument, "movement rule in a non-movement event");
    touchAround(e.p1);
    touchAround(e.p2);
    const RuleSide& h = r.rhs;
    for (auto [pos, before, after] : {std::tuple{e.p1, r.lhs.s1, h.s1}, std::tuple{e.p2, r.lhs.s2, h.s2}}) {
      if (!before.isEmpty() && after.isEmpty()) c.remove(pos);
    }
    for (auto [pos, before, after] : {std::tuple{e.p1, r.lhs.s1, h.s1}, std::tuple{e.p2, r.lhs.s2, h.s2}}) {
      if (after.isEmpty()) continue;
      if (before.isEmpty())
        c.place(pos, after);
      else
        c.setState(pos, after);
    }
    if (!h.s1.isEmpty() && !h.s2.isEmpty()) c.setBond(e.p1, h.dir, h.bond);
    return;
  }
  if (!r.isMovement()) throw Error(ErrorCode::InvalidArgument, "non-movement rule in a movement event");
  const MovementGeometry g = movementGeometry(r, e);
  const auto set = movableSet(c, g.arm, g.base, g.v);
  if (set.empty()) throw Error(ErrorCode::Blocked, "movable set empty for arm " + toString(g.arm));
  for (GridPoint p : set) {
    touchAround(p);
    touchAround(p + vec(g.v));
  }
  touchAround(e.p1);
  touchAround(e.p2);
  c.setBond(e.p1, r.lhs.dir, BondType::Null);
  c.translateSubset(set, vec(g.v));
  GridPoint np1 = e.p1;
  GridPoint np2 = e.p2;
  if (e.arm == Arm::S2)
    np2 += vec(g.v);
  else
    np1 += vec(g.v);
  if (directionBetween(np1, np2) != r.rhs.dir)
    throw Error(ErrorCode::CollisionDetected, "movement produced the wrong relative position");
  c.setState(np1, r.rhs.s1);
  c.setState(np2, r.rhs.s2);
  c.setBond(np1, r.rhs.dir, r.rhs.bond);
}

}  // namespace

void applyMovement(Configuration& c, const RuleSet& rs, const Event& e) {
  if (e.kind != EventKind::Movement) throw Error(ErrorCode::InvalidArgument, "not a movement event");
  applyTracked(c, rs, e, nullptr);
}

void applyNonMovement(Configuration& c, const RuleSet& rs, const Event& e) {
  if (e.kind != EventKind::NonMovement) throw Error(ErrorCode::InvalidArgument, "not a non-movement event");
  applyTracked(c, rs, e, nullptr);
}

void applyAgitation(Configuration& c, GridPoint a, Direction v) {
  RuleSet none;
  applyTracked(c, none, Event{EventKind::Agitation, 0, a, a + vec(v), Arm::None, v}, nullptr);
}

void applyEvent(Configuration& c, const RuleSet& rs, const Event& e) { applyTracked(c, rs, e, nullptr); }

std::vector<Event> enumerateApplicable(const Configuration& c, const RuleSet& rs, bool agitationOn) {
  std::vector<Event> out;
  for (const CandidateEvent& cand : matchCandidates(c, rs)) {
    const Rule& r = rs[cand.rule];
    if (!r.isMovement()) {
      out.push_back({EventKind::NonMovement, cand.rule, cand.p1, cand.p2, Arm::None, Direction::PlusX});
      continue;
    }
    Event e{EventKind::Movement, cand.rule, cand.p1, cand.p2, cand.arm, Direction::PlusX};
    const MovementGeometry g = movementGeometry(r, e);
    std::vector<GridPoint> members;
    if (expand(c, g.arm, g.base, g.v, members, nullptr)) out.push_back(e);
  }
  if (agitationOn) {
    for (GridPoint p : c.positions())
      for (Direction v : kDirections)
        out.push_back({EventKind::Agitation, 0, p, p + vec(v), Arm::None, v});
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::forTrial(std::uint64_t seedBase, std::uint64_t trial) {
  return Rng(splitmix64(seedBase + trial));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "below(0)");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do x = engine_();
  while (x >= limit);
  return x % n;
}

double Rng::exponential(double rate) { return -std::log1p(-uniform()) / rate; }

std::optional<StepResult> step(Configuration& c, const RuleSet& rs, Rng& rng, bool agitationOn) {
  auto events = enumerateApplicable(c, rs, agitationOn);
  if (events.empty()) return std::nullopt;
  StepResult res;
  res.applicable = events.size();
  res.dt = rng.exponential(static_cast<double>(events.size()));
  res.event = events[rng.below(events.size())];
  applyEvent(c, rs, res.event);
  return res;
}

std::string_view toString(StopReason r) {
  switch (r) {
    case StopReason::Terminal: return "terminal";
    case StopReason::EventLimit: return "event-limit";
    case StopReason::TimeLimit: return "time-limit";
  }
  return "?";
}

namespace {

/// Rule matches kept up to date from the positions each event touches.
/// Movement candidates are not pre-checked for blocking; run() thins them.
class CandidateIndex {
 public:
  struct Cand {
    std::uint32_t rule;
    GridPoint p1;
    Direction u;
    Arm arm;
  };

  CandidateIndex(const Configuration& c, const RuleSet& rs) : c_(c), rs_(rs) {
    std::vector<GridPoint> all = c.positions();
    std::sort(all.begin(), all.end());
    refresh(all);
  }

  std::size_t size() const { return cands_.size(); }
  const Cand& operator[](std::size_t i) const { return cands_[i]; }

  void refresh(const std::vector<GridPoint>& touched) {
    std::vector<std::pair<GridPoint, Direction>> pairs;
    pairs.reserve(touched.size() * 12);
    for (GridPoint t : touched)
      for (Direction u : kDirections) {
        pairs.emplace_back(t, u);
        pairs.emplace_back(t - vec(u), u);
      }
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first < b.first : index(a.second) < index(b.second);
    });
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    for (const auto& [p, u] : pairs) {
      dropPair(p, u);
      addPair(p, u);
    }
  }

 private:
  static std::uint64_t key(GridPoint p, Direction u) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.x)) << 35) ^
           (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.y)) << 3) ^ static_cast<std::uint64_t>(index(u));
  }

  void dropPair(GridPoint p, Direction u) {
    auto it = byPair_.find(key(p, u));
    if (it == byPair_.end()) return;
    std::vector<std::uint32_t> slots = std::move(it->second);
    byPair_.erase(it);
    std::sort(slots.begin(), slots.end(), std::greater<>());
    for (std::uint32_t i : slots) {
      const std::uint32_t last = static_cast<std::uint32_t>(cands_.size() - 1);
      if (i != last) {
        cands_[i] = cands_[last];
        auto& v = byPair_.at(key(cands_[i].p1, cands_[i].u));
        *std::find(v.begin(), v.end(), last) = i;
      }
      cands_.pop_back();
    }
  }

  void addPair(GridPoint p, Direction u) {
    const GridPoint q = p + vec(u);
    const auto* a = c_.cell(p);
    const auto* b = c_.cell(q);
    if (!a && !b) return;
    const StateId s1 = a ? a->state : kEmpty;
    const StateId s2 = b ? b->state : kEmpty;
    const BondType bond = a && b ? a->bonds[index(u)] : BondType::Null;
    const auto& rules = rs_.lookup(s1, s2, u);
    if (rules.empty()) return;
    std::vector<std::uint32_t>* slots = nullptr;
    for (std::uint32_t ri : rules) {
      const Rule& r = rs_[ri];
      if (r.lhs.bond != bond) continue;
      if (!slots) slots = &byPair_[key(p, u)];
      const std::array<Arm, 2> arms = r.isMovement() ? std::array{Arm::S1, Arm::S2} : std::array{Arm::None, Arm::None};
      for (std::size_t k = 0; k < (r.isMovement() ? 2u : 1u); ++k) {
        const Arm arm = arms[k];
        slots->push_back(static_cast<std::uint32_t>(cands_.size()));
        cands_.push_back({ri, p, u, arm});
      }
    }
  }

  const Configuration& c_;
  const RuleSet& rs_;
  std::vector<Cand> cands_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> byPair_;
};

bool feasible(const Configuration& c, const RuleSet& rs, const Event& e) {
  if (e.kind != EventKind::Movement) return true;
  const MovementGeometry g = movementGeometry(rs[e.rule], e);
  std::vector<GridPoint> members;
  return expand(c, g.arm, g.base, g.v, members, nullptr);
}

}  // namespace

Trajectory run(const Configuration& initial, const RuleSet& rs, std::uint64_t seed,
               const RunOptions& options) {
  Trajectory t;
  t.initial = initial;
  t.seed = seed;
  t.agitationOn = options.agitationOn;
  Configuration c = initial;
  Rng rng(seed);
  const RunLimits& lim = options.limits;
  t.stop = StopReason::EventLimit;
  CandidateIndex index(c, rs);
  std::vector<GridPoint> touched;
  // Thinning: every candidate fires at rate 1 and a blocked movement is a
  // null event, which leaves the jump chain and holding times unchanged.
  double clock = 0;
  std::size_t nulls = 0;
  while (true) {
    if (t.events >= lim.maxEvents) {
      t.stop = StopReason::EventLimit;
      break;
    }
    const std::size_t nAg = options.agitationOn ? c.size() * 6 : 0;
    const std::size_t total = index.size() + nAg;
    if (total == 0) {
      t.stop = StopReason::Terminal;
      break;
    }
    if (nulls > 4 * total + 16) {
      bool any = nAg > 0;
      for (std::size_t i = 0; i < index.size() && !any; ++i) {
        const auto& k = index[i];
        any = k.arm == Arm::None ||
              feasible(c, rs, {EventKind::Movement, k.rule, k.p1, k.p1 + vec(k.u), k.arm, Direction::PlusX});
      }
      if (!any) {
        t.stop = StopReason::Terminal;
        break;
      }
      nulls = 0;
    }
    clock += rng.exponential(static_cast<double>(total));
    const std::size_t pick = rng.below(total);
    Event e;
    if (pick < index.size()) {
      const auto& k = index[pick];
      e = {k.arm == Arm::None ? EventKind::NonMovement : EventKind::Movement, k.rule, k.p1, k.p1 + vec(k.u), k.arm,
           Direction::PlusX};
    } else {
      const std::size_t a = pick - index.size();
      const GridPoint p = c.positions()[a / 6];
      const Direction v = kDirections[a % 6];
      e = {EventKind::Agitation, 0, p, p + vec(v), Arm::None, v};
    }
    if (clock > lim.maxTime) {
      t.stop = StopReason::TimeLimit;
      break;
    }
    if (!feasible(c, rs, e)) {
      ++nulls;
      continue;
    }
    nulls = 0;
    TrajectoryRecord rec;
    rec.event = e;
    touched.clear();
    if (options.recordDeltas) {
      Configuration before = c;
      applyTracked(c, rs, e, &touched);
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
      for (GridPoint p : touched) {
        const auto* b = before.cell(p);
        const auto* a = c.cell(p);
        if ((b == nullptr) != (a == nullptr) || (b && !(*b == *a)))
          rec.delta.push_back({p, b ? std::optional(*b) : std::nullopt, a ? std::optional(*a) : std::nullopt});
      }
    } else {
      applyTracked(c, rs, e, &touched);
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    }
    index.refresh(touched);
    t.time = clock;
    rec.time = t.time;
    ++t.events;
    if (options.observer) options.observer(c, rec);
    t.records.push_back(std::move(rec));
  }
  t.final = std::move(c);
  return t;
}

Configuration replayDeltas(const Trajectory& t) {
  // Rebuild through the public API so bond symmetry is re-established.
  std::unordered_map<GridPoint, Configuration::Cell> cells(t.initial.cells().begin(), t.initial.cells().end());
  for (const auto& rec : t.records)
    for (const auto& ch : rec.delta) {
      if (ch.after)
        cells[ch.position] = *ch.after;
      else
        cells.erase(ch.position);
    }
  Configuration out;
  for (const auto& [p, cell] : cells) out.place(p, cell.state);
  for (const auto& [p, cell] : cells)
    for (Direction d : kDirections)
      if (cell.bonds[index(d)] != BondType::Null) out.setBond(p, d, cell.bonds[index(d)]);
  return out;
}

}  // namespace nubot
