#include <doctest.h>

#include <random>

#include "nubot/analysis.hpp"
#include "nubot/error.hpp"
#include "nubot/io.hpp"
#include "nubot/kinetics.hpp"
#include "nubot/programs.hpp"

using namespace nubot;

namespace {

Rule R(std::string_view line) { return io::parseRule(line); }

Configuration rigidLine(int n) {
  Configuration c;
  for (int i = 0; i < n; ++i) c.place({i, 0}, StateId::of("0"));
  for (int i = 0; i + 1 < n; ++i) c.setBond({i, 0}, Direction::PlusX, BondType::Rigid);
  return c;
}

Configuration movePair() {
  Configuration c;
  c.place({0, 0}, StateId::of("1"));
  c.place({1, 0}, StateId::of("1"));
  c.setBond({0, 0}, Direction::PlusX, BondType::Rigid);
  return c;
}

Configuration blockedTriple() {
  Configuration c = movePair();
  c.place({0, 1}, StateId::of("d"));
  c.setBond({0, 1}, Direction::MinusW, BondType::Rigid);  // D at (0,1) to B at (1,0)
  return c;
}

}  // namespace

TEST_SUITE("kinetics") {
  TEST_CASE("agitation set examples") {
    Configuration one;
    one.place({0, 0}, StateId::of("a"));
    for (Direction v : kDirections) CHECK(agitationSet(one, {0, 0}, v) == std::vector<GridPoint>{{0, 0}});
    const Configuration line = rigidLine(6);
    CHECK(agitationSet(line, {2, 0}, Direction::PlusX).size() == 6);
    CHECK_THROWS_AS(agitationSet(one, {5, 5}, Direction::PlusX), Error);
  }

  TEST_CASE("movable set examples") {
    CHECK(movableSet(movePair(), {0, 0}, {1, 0}, Direction::PlusY) == std::vector<GridPoint>{{0, 0}});
    MovableTrace tr;
    CHECK(movableSet(blockedTriple(), {0, 0}, {1, 0}, Direction::PlusY, &tr).empty());
    CHECK(tr.blockedByBase);
    CHECK_THROWS_AS(movableSet(movePair(), {0, 0}, {2, 0}, Direction::PlusY), Error);
  }

  TEST_CASE("movable and agitation sets agree with brute force") {
    Rng rng(99);
    int compared = 0;
    for (int t = 0; t < 300; ++t) {
      const auto inst = analysis::randomOracleInstance(rng);
      const auto fast = movableSet(inst.configuration, inst.a, inst.b, inst.v);
      CHECK(fast == analysis::movableSetOracle(inst.configuration, inst.a, inst.b, inst.v));
      const auto ag = agitationSet(inst.configuration, inst.a, inst.v);
      CHECK(analysis::translationValid(inst.configuration, ag, inst.v));
      // Minimality: dropping any member other than A breaks validity.
      for (std::size_t i = 0; i < ag.size(); ++i) {
        if (ag[i] == inst.a) continue;
        auto smaller = ag;
        smaller.erase(smaller.begin() + static_cast<long>(i));
        const bool ok = analysis::translationValid(inst.configuration, smaller, inst.v);
        if (ok) CHECK(ag.size() == 1);
      }
      ++compared;
    }
    CHECK(compared == 300);
  }

  TEST_CASE("movement: both arm choices") {
    RuleSet rs;
    rs.add(R("1 1 r +x -> 1 2 r +y"));
    Configuration a = movePair();
    applyMovement(a, rs, Event{EventKind::Movement, 0, {0, 0}, {1, 0}, Arm::S2, Direction::PlusX});
    CHECK(a.stateAt({0, 0}) == StateId::of("1"));
    CHECK(a.stateAt({0, 1}) == StateId::of("2"));
    CHECK(a.bond({0, 0}, Direction::PlusY) == BondType::Rigid);
    CHECK(a.size() == 2);

    Configuration b = movePair();
    applyMovement(b, rs, Event{EventKind::Movement, 0, {0, 0}, {1, 0}, Arm::S1, Direction::PlusX});
    CHECK(b.stateAt({1, -1}) == StateId::of("1"));
    CHECK(b.stateAt({1, 0}) == StateId::of("2"));
    CHECK(b.bond({1, -1}, Direction::PlusY) == BondType::Rigid);
  }

  TEST_CASE("movement drags a rigid tail") {
    RuleSet rs;
    rs.add(R("1 1 r +x -> 1 2 r +y"));
    Configuration d = movePair();
    for (int i = 1; i <= 5; ++i) {
      d.place({-i, 0}, StateId::of("t"));
      d.setBond({-i, 0}, Direction::PlusX, BondType::Rigid);
    }
    const auto before = d.positions();
    applyMovement(d, rs, Event{EventKind::Movement, 0, {0, 0}, {1, 0}, Arm::S1, Direction::PlusX});
    for (GridPoint p : before)
      if (p != GridPoint{1, 0}) CHECK(d.occupied(p + GridPoint{1, -1}));
    CHECK(d.size() == 7);
    for (int i = 1; i <= 5; ++i) CHECK(d.bond({1 - i, -1}, Direction::PlusX) == BondType::Rigid);
    CHECK(d.bond({1, -1}, Direction::PlusY) == BondType::Rigid);
  }

  TEST_CASE("blocked movement is not applicable") {
    // A pushes D, D is rigidly tied to the base B: both arm choices blocked.
    RuleSet rs;
    rs.add(R("1 1 r +w -> 1 2 r -x"));
    Configuration c;
    c.place({0, 0}, StateId::of("1"));
    c.place({-1, 1}, StateId::of("1"));
    c.setBond({0, 0}, Direction::PlusW, BondType::Rigid);
    c.place({0, 1}, StateId::of("d"));
    c.setBond({-1, 1}, Direction::PlusX, BondType::Rigid);
    CHECK(movableSet(c, {0, 0}, {-1, 1}, Direction::PlusY).empty());
    CHECK(matchCandidates(c, rs).size() == 2);
    CHECK(enumerateApplicable(c, rs, false).empty());
    Configuration again = c;
    CHECK_THROWS_AS(applyMovement(again, rs, Event{EventKind::Movement, 0, {0, 0}, {-1, 1}, Arm::S1, Direction::PlusX}),
                    Error);
  }

  TEST_CASE("non-movement application") {
    RuleSet rs;
    rs.add(R("3 - n +x -> 0 2 r +x"));
    Configuration c;
    c.place({0, 0}, StateId::of("3"));
    applyNonMovement(c, rs, Event{EventKind::NonMovement, 0, {0, 0}, {1, 0}, Arm::None, Direction::PlusX});
    CHECK(c.stateAt({0, 0}) == StateId::of("0"));
    CHECK(c.stateAt({1, 0}) == StateId::of("2"));
    CHECK(c.bond({0, 0}, Direction::PlusX) == BondType::Rigid);
    CHECK_THROWS_AS(
        applyNonMovement(c, rs, Event{EventKind::NonMovement, 0, {0, 0}, {1, 0}, Arm::None, Direction::PlusX}), Error);

    RuleSet del;
    del.add(R("1 a r +x -> 1 - n +x"));
    Configuration d;
    d.place({0, 0}, StateId::of("1"));
    d.place({1, 0}, StateId::of("a"));
    d.setBond({0, 0}, Direction::PlusX, BondType::Rigid);
    for (Direction u : {Direction::PlusY, Direction::MinusW}) {
      d.place(GridPoint{1, 0} + vec(u), StateId::of("z"));
      d.setBond({1, 0}, u, BondType::Flexible);
    }
    applyNonMovement(d, del, Event{EventKind::NonMovement, 0, {0, 0}, {1, 0}, Arm::None, Direction::PlusX});
    CHECK(!d.occupied({1, 0}));
    CHECK(d.bondCount() == 0);
  }

  TEST_CASE("agitation application") {
    Configuration c;
    c.place({0, 0}, StateId::of("a"));
    c.place({1, 0}, StateId::of("b"));
    applyAgitation(c, {0, 0}, Direction::MinusX);
    CHECK(c.occupied({-1, 0}));
    CHECK(c.occupied({1, 0}));
    const Configuration line = rigidLine(4);
    Configuration moved = line;
    applyAgitation(moved, {1, 0}, Direction::PlusY);
    CHECK(moved == line.translated({0, 1}));
  }

  TEST_CASE("event enumeration counts") {
    const auto p = programs::genSimpleLine(3);
    CHECK(enumerateApplicable(p.initial, p.rules, false).size() == 1);
    CHECK(enumerateApplicable(p.initial, p.rules, true).size() == 7);
  }

  TEST_CASE("step: terminal detection and holding time") {
    const auto p = programs::genSimpleLine(1);
    Configuration c = p.initial;
    Rng rng(4);
    const auto s = step(c, p.rules, rng, false);
    REQUIRE(s);
    CHECK(s->applicable == 1);
    CHECK(s->dt > 0);
    CHECK(!step(c, p.rules, rng, false));
  }

  TEST_CASE("run: line terminal, determinism, replay") {
    const auto p = programs::genSimpleLine(3);
    RunOptions o;
    o.recordDeltas = true;
    const Trajectory a = run(p.initial, p.rules, 7, o);
    const Trajectory b = run(p.initial, p.rules, 7, o);
    CHECK(a.stop == StopReason::Terminal);
    CHECK(a.final.size() == 4);
    CHECK(p.terminal.matches(a.final));
    CHECK(a.time == b.time);
    CHECK(a.final == b.final);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) CHECK(a.records[i].event == b.records[i].event);
    for (std::size_t i = 1; i < a.records.size(); ++i) CHECK(a.records[i].time > a.records[i - 1].time);
    CHECK(replayDeltas(a) == a.final);
  }

  TEST_CASE("run limits") {
    const auto p = programs::genSimpleLine(5);
    RunOptions o;
    o.limits.maxEvents = 0;
    const Trajectory t = run(p.initial, p.rules, 1, o);
    CHECK(t.stop == StopReason::EventLimit);
    CHECK(t.events == 0);
    o.limits.maxEvents = 2;
    CHECK(run(p.initial, p.rules, 1, o).events == 2);
    RunOptions tl;
    tl.limits.maxTime = 1e-9;
    CHECK(run(p.initial, p.rules, 1, tl).stop == StopReason::TimeLimit);
  }

  TEST_CASE("walker stays on its track") {
    const auto p = programs::genWalker(6);
    for (std::uint64_t s = 0; s < 20; ++s) {
      RunOptions o;
      bool attached = true;
      o.observer = [&](const Configuration& c, const TrajectoryRecord&) {
        attached = attached && connectedComponents(c).size() == 1;
      };
      const Trajectory t = run(p.initial, p.rules, splitmix64(s), o);
      CHECK(p.terminal.matches(t.final));
      CHECK(attached);
    }
  }

  TEST_CASE("rotation reaches the rotated arm") {
    for (std::uint64_t n : {1, 4, 8}) {
      const auto p = programs::genRotation(n);
      const Trajectory t = run(p.initial, p.rules, 3);
      CHECK(p.terminal.matches(t.final));
    }
  }
}
