// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nubot/analysis.hpp"
#include "nubot/error.hpp"
#include "nubot/io.hpp"
#include "nubot/kinetics.hpp"
#include "nubot/programs.hpp"

using namespace nubot;
using programs::Program;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream notes;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes << " [failed: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

analysis::System sys(const Program& p) { return {p.rules, p.initial}; }

analysis::TimingTable study(const std::function<Program(std::uint64_t)>& gen, const std::vector<std::uint64_t>& sizes,
                            std::uint64_t trials, std::uint64_t seedBase, bool agitation = false,
                            std::function<bool(const Configuration&)> done = {}) {
  analysis::TimingOptions o;
  o.trials = trials;
  o.seedBase = seedBase;
  o.agitationOn = agitation;
  o.limits.maxEvents = 20'000'000;
  o.done = std::move(done);
  return analysis::timingStudy([&](std::uint64_t n) { return sys(gen(n)); }, sizes, o);
}

bool within3se(double mean, double se, double target) { return std::abs(mean - target) <= 3 * se; }

std::string fmt(double v, int prec = 4) {
  char b[64];
  std::snprintf(b, sizeof b, "%.*g", prec, v);
  return b;
}

// ---------------------------------------------------------------------------

void c1(Outcome& o) {
  Rng rng(20240601);
  std::size_t dis = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto inst = analysis::randomOracleInstance(rng);
    if (movableSet(inst.configuration, inst.a, inst.b, inst.v) !=
        analysis::movableSetOracle(inst.configuration, inst.a, inst.b, inst.v))
      ++dis;
  }
  o.require(dis == 0, "random disagreements " + std::to_string(dis));

  Configuration free;
  free.place({0, 0}, StateId::of("1"));
  free.place({1, 0}, StateId::of("1"));
  free.setBond({0, 0}, Direction::PlusX, BondType::Rigid);
  Configuration blocked = free;
  blocked.place({0, 1}, StateId::of("d"));
  blocked.setBond({0, 1}, Direction::MinusW, BondType::Rigid);
  const std::vector<GridPoint> justA{{0, 0}};
  o.require(movableSet(free, {0, 0}, {1, 0}, Direction::PlusY) == justA &&
                analysis::movableSetOracle(free, {0, 0}, {1, 0}, Direction::PlusY) == justA,
            "unblocked fixture");
  o.require(movableSet(blocked, {0, 0}, {1, 0}, Direction::PlusY).empty() &&
                analysis::movableSetOracle(blocked, {0, 0}, {1, 0}, Direction::PlusY).empty(),
            "blocked fixture");

  // Rigid line pushed along its axis by an arm at one end: the whole line moves.
  auto perCall = [](int n) {
    Configuration c;
    for (int i = 0; i < n; ++i) c.place({i, 0}, StateId::of("0"));
    for (int i = 0; i + 1 < n; ++i) c.setBond({i, 0}, Direction::PlusX, BondType::Rigid);
    c.place({0, -1}, StateId::of("b"));
    c.setBond({0, 0}, Direction::MinusY, BondType::Rigid);
    const int reps = std::max(3, 200000 / n);
    std::size_t sink = 0;
    const auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) sink += movableSet(c, {0, 0}, {0, -1}, Direction::PlusX).size();
    const double t = since(t0) / reps;
    return std::make_pair(t, sink / static_cast<std::size_t>(reps));
  };
  const auto [t3, s3] = perCall(1000);
  const auto [t4, s4] = perCall(10000);
  const auto [t5, s5] = perCall(100000);
  o.require(s3 == 1000 && s4 == 10000 && s5 == 100000, "line moves as a whole");
  o.require(t4 < 0.010, "10^4 call " + fmt(t4 * 1e3) + " ms");
  const double slope = std::log10(t5 / t3) / 2;
  o.require(slope > 0.7 && slope < 1.3, "log-log slope " + fmt(slope));
  o.notes << " disagreements=" << dis << "/1000; per call: 10^3 " << fmt(t3 * 1e3) << " ms, 10^4 " << fmt(t4 * 1e3)
          << " ms, 10^5 " << fmt(t5 * 1e3) << " ms; log-log slope " << fmt(slope, 3);
}

void c2(Outcome& o) {
  const RuleSet grow(std::vector<Rule>{io::parseRule("a - n +x -> b c r +x")});
  Configuration single;
  single.place({0, 0}, StateId::of("a"));
  double sum = 0, sq = 0;
  const int N = 10000;
  for (int i = 0; i < N; ++i) {
    Configuration c = single;
    Rng rng = Rng::forTrial(7, static_cast<std::uint64_t>(i));
    const auto s = step(c, grow, rng, false);
    sum += s->dt;
    sq += s->dt * s->dt;
  }
  const double mean = sum / N;
  o.require(std::abs(mean - 1.0) <= 0.03, "holding-time mean " + fmt(mean));

  Configuration two;
  two.place({0, 0}, StateId::of("a"));
  two.place({10, 0}, StateId::of("a"));
  int first = 0;
  for (int i = 0; i < N; ++i) {
    Configuration c = two;
    Rng rng = Rng::forTrial(9, static_cast<std::uint64_t>(i));
    const auto s = step(c, grow, rng, false);
    if (s->applicable != 2) o.require(false, "expected 2 applicable events");
    first += s->event.p1 == GridPoint{0, 0};
  }
  const double freq = static_cast<double>(first) / N;
  o.require(std::abs(freq - 0.5) <= 0.02, "pick frequency " + fmt(freq));
  o.notes << " mean holding time " << fmt(mean, 5) << " (sd " << fmt(std::sqrt(sq / N - mean * mean), 4)
          << "), first-event frequency " << fmt(freq, 4);
}

void c3(Outcome& o) {
  std::uint64_t wrong = 0;
  const auto table = study(programs::genSimpleLine, {4, 8, 16}, 200, 3000);
  for (const auto& r : table.rows) {
    o.require(r.failures == 0, "runs hit limits");
    o.require(within3se(r.mean, r.stderr_, static_cast<double>(r.n)), "k=" + std::to_string(r.n) + " mean");
    o.notes << " k=" << r.n << ": " << fmt(r.mean) << "±" << fmt(r.stderr_, 2) << ";";
  }
  for (std::uint64_t k : {4, 8, 16}) {
    const Program p = programs::genSimpleLine(k);
    for (std::uint64_t t = 0; t < 200; ++t)
      wrong += !p.terminal.matches(run(p.initial, p.rules, splitmix64(3000 + t)).final);
  }
  o.require(wrong == 0, "non-line terminals " + std::to_string(wrong));
  for (std::uint64_t k = 1; k <= 3; ++k) {
    const Program p = programs::genSimpleLine(k);
    const auto u = analysis::uniquelyProduces(p.rules, p.initial, p.terminal.target);
    o.require(u.verdict == analysis::Verdict::Yes, "unique production k=" + std::to_string(k));
  }
  o.notes << " terminals all (k+1)-lines; unique production certified for k=1..3";
}

void c4(Outcome& o) {
  // One doubling step on an isolated left-right pair; the level below has no rules.
  RuleSet rs(programs::detail::fastLineLevel(2));
  Configuration pair;
  pair.place({0, 0}, StateId::of("L2"));
  pair.place({1, 0}, StateId::of("r"));
  pair.setBond({0, 0}, Direction::PlusX, BondType::Rigid);
  std::vector<double> times;
  for (std::uint64_t t = 0; t < 500; ++t) {
    const Trajectory tr = run(pair, rs, splitmix64(4000 + t));
    if (tr.stop != StopReason::Terminal || tr.final.size() != 4) o.require(false, "pair did not finish as 4 monomers");
    times.push_back(tr.time);
  }
  const auto [m, se] = analysis::meanAndStderr(times);
  const double exact = analysis::expectedAbsorptionTime(rs, pair);
  o.require(within3se(m, se, 13.0), "mean " + fmt(m) + " vs 13");
  o.notes << " mean " << fmt(m) << "±" << fmt(se, 2) << " over 500 runs; exact chain value " << fmt(exact, 8);
}

void c5(Outcome& o) {
  const std::vector<std::uint64_t> sizes{8, 16, 32, 64, 128, 256};
  std::uint64_t wrong = 0;
  std::vector<double> times;
  analysis::TimingTable table;
  for (std::uint64_t n : sizes) {
    const Program p = programs::genFastLine(n);
    analysis::TimingRow row;
    row.n = n;
    row.trials = 50;
    for (std::uint64_t t = 0; t < 50; ++t) {
      const Trajectory tr = run(p.initial, p.rules, splitmix64(5000 + t));
      wrong += !p.terminal.matches(tr.final);
      row.times.push_back(tr.time);
    }
    std::tie(row.mean, row.stderr_) = analysis::meanAndStderr(row.times);
    table.rows.push_back(row);
    o.notes << " n=" << n << ": " << fmt(row.mean) << ";";
  }
  o.require(wrong == 0, "inexact terminals " + std::to_string(wrong));
  const auto fit = analysis::fitScaling(table);
  const auto& lg = fit.fit(analysis::ScalingModel::Log);
  const auto& lin = fit.fit(analysis::ScalingModel::Linear);
  o.require(lg.r2 >= 0.9, "log R^2 " + fmt(lg.r2));
  o.require(lg.rss < lin.rss, "log fit does not beat linear");
  // States per log2 n stays under a constant fixed up front.
  const double c = 40.0;
  double worst = 0;
  for (std::uint64_t n : sizes) {
    const double ratio = static_cast<double>(programs::genFastLine(n).stateCount) / std::log2(static_cast<double>(n));
    worst = std::max(worst, ratio);
  }
  o.require(worst <= c, "states/log2 n " + fmt(worst));
  o.notes << " log R^2 " << fmt(lg.r2, 3) << ", rss log " << fmt(lg.rss, 3) << " < linear " << fmt(lin.rss, 3)
          << "; max states/log2 n " << fmt(worst, 3) << " <= " << c;
}

void c6(Outcome& o) {
  const std::string fin = "final";
  std::uint64_t early = 0, unstable = 0, wrong = 0, runs = 0;
  for (std::uint64_t n : {8, 16}) {
    const Program p = programs::genSyncLine(n, fin);
    const std::set<std::string> backbone{"0", "Y", "Yl", "Yr", "Yl2", "Yr2", "Z", fin};
    auto syncRow = [](const std::string& s) { return s.rfind("S.", 0) == 0 || s == "F" || s == "Fr" || s[0] == 'G'; };
    for (std::uint64_t t = 0; t < 200; ++t) {
      bool seen = false;
      RunOptions opt;
      opt.observer = [&](const Configuration& c, const TrajectoryRecord&) {
        if (!isStable(c)) ++unstable;
        if (seen) return;
        std::size_t line = 0, pending = 0;
        bool hasFinal = false;
        for (const auto& [q, cell] : c.cells()) {
          const std::string& s = cell.state.name();
          if (s == fin) hasFinal = true;
          if (backbone.count(s)) ++line;
          else if (!syncRow(s)) ++pending;
        }
        if (hasFinal) {
          seen = true;
          if (line != n || pending != 0) ++early;
        }
      };
      const Trajectory tr = run(p.initial, p.rules, splitmix64(6000 + t), opt);
      wrong += !p.terminal.matches(tr.final);
      ++runs;
    }
  }
  o.require(early == 0, "final state before completion in " + std::to_string(early) + " runs");
  o.require(unstable == 0, "unstable configurations " + std::to_string(unstable));
  o.require(wrong == 0, "wrong terminals " + std::to_string(wrong));
  o.notes << " " << runs << " runs; early finals " << early << ", unstable samples " << unstable;
}

void c7(Outcome& o) {
  for (std::uint64_t n : {4, 8, 16}) {
    const Program p = programs::genCounter(n);
    for (std::uint64_t t = 0; t < 20; ++t) {
      const Configuration f = run(p.initial, p.rules, splitmix64(7000 + t)).final;
      o.require(p.terminal.matches(f), "counter n=" + std::to_string(n) + " terminal");
    }
  }
  const auto table = study(programs::genCounter, {4, 8, 16, 32}, 100, 7100);
  for (const auto& r : table.rows) {
    o.require(r.failures == 0, "runs hit limits");
    o.notes << " n=" << r.n << ": " << fmt(r.mean) << "±" << fmt(r.stderr_, 2) << ";";
  }
  const auto fit = analysis::fitScaling(table);
  o.notes << " rss lin " << fmt(fit.fit(analysis::ScalingModel::Linear).rss, 3) << ", log "
          << fmt(fit.fit(analysis::ScalingModel::Log).rss, 3) << ", log^2 "
          << fmt(fit.fit(analysis::ScalingModel::LogSquared).rss, 3) << "; best " << analysis::toString(fit.best);
  o.require(fit.best == analysis::ScalingModel::LogSquared, "log^2 n not preferred");
}

void c8(Outcome& o) {
  for (std::uint64_t n : {2, 4, 8}) {
    const Program p = programs::genSquare(n);
    std::uint64_t wrong = 0;
    for (std::uint64_t t = 0; t < 10; ++t) {
      const Configuration f = canonicalize(run(p.initial, p.rules, splitmix64(8000 + t)).final);
      bool ok = f.size() == n * n;
      for (int i = 0; i < static_cast<int>(n) && ok; ++i)
        for (int j = 0; j < static_cast<int>(n) && ok; ++j) {
          ok = f.occupied({i, j});
          if (ok && i + 1 < static_cast<int>(n)) ok = f.bond({i, j}, Direction::PlusX) == BondType::Rigid;
          if (ok && j + 1 < static_cast<int>(n)) ok = f.bond({i, j}, Direction::PlusY) == BondType::Rigid;
        }
      wrong += !(ok && p.terminal.matches(f));
    }
    o.require(wrong == 0, "square n=" + std::to_string(n));
  }
  const auto table = study(programs::genSquare, {4, 8, 16}, 40, 8100);
  for (const auto& r : table.rows) {
    o.require(r.failures == 0, "runs hit limits");
    o.notes << " n=" << r.n << ": " << fmt(r.mean) << "±" << fmt(r.stderr_, 2) << ";";
  }
  const auto fit = analysis::fitScaling(table);
  const auto& lg = fit.fit(analysis::ScalingModel::Log);
  o.require(lg.r2 >= 0.9, "log R^2 " + fmt(lg.r2));
  o.notes << " log fit R^2 " << fmt(lg.r2, 3) << ", slope " << fmt(lg.slope, 3);
}

void c9(Outcome& o) {
  std::set<std::uint64_t> acc;
  std::set<GridPoint> L;
  for (std::uint64_t i = 0; i < 16; ++i) {
    const GridPoint g = programs::detail::snakeCell(i, 4);
    if (g.x == 0 || g.y == 0) {
      acc.insert(i);
      L.insert(g);
    }
  }
  const Program p = programs::genShape(tm_library::lookupTable(4, acc), 16, L);
  std::uint64_t exact = 0, broken = 0, samples = 0;
  for (std::uint64_t t = 0; t < 50; ++t) {
    RunOptions opt;
    opt.observer = [&](const Configuration& c, const TrajectoryRecord&) {
      ++samples;
      if (connectedComponents(c).size() > 1) ++broken;
    };
    const Trajectory tr = run(p.initial, p.rules, splitmix64(9000 + t), opt);
    exact += p.terminal.matches(tr.final);
  }
  o.require(exact == 50, "exact " + std::to_string(exact) + "/50");
  o.require(broken == 0, "disconnected samples " + std::to_string(broken));
  o.notes << " " << L.size() << "-pixel L exact on " << exact << "/50; " << samples
          << " sampled configurations, disconnected " << broken;
}

void c10(Outcome& o) {
  const auto tm = tm_library::checkerboard(4, 2);
  const Program p = programs::genPattern(tm, 16);
  std::uint64_t exact = 0, outside = 0, samples = 0;
  for (std::uint64_t t = 0; t < 25; ++t) {
    RunOptions opt;
    opt.observer = [&](const Configuration& c, const TrajectoryRecord&) {
      ++samples;
      for (const auto& [q, cell] : c.cells())
        if (q.x < 0 || q.y < 0 || q.x >= 16 || q.y >= 16) {
          ++outside;
          break;
        }
    };
    const Trajectory tr = run(p.initial, p.rules, splitmix64(10000 + t), opt);
    exact += p.terminal.matches(tr.final);
  }
  o.require(exact == 25, "exact " + std::to_string(exact) + "/25");
  o.require(outside == 0, "events outside the 16x16 region " + std::to_string(outside));
  o.notes << " exact " << exact << "/25; " << samples << " events checked, outside " << outside;
}

void c11(Outcome& o) {
  auto compare = [&](const std::string& name, const Program& p) {
    auto gen = [&](std::uint64_t) { return p; };
    auto done = [&](const Configuration& c) { return p.terminal.matches(c); };
    const auto off = study(gen, {1}, 500, 11000, false, done).rows[0];
    const auto on = study(gen, {1}, 500, 11000, true, done).rows[0];
    const double se = std::sqrt(off.stderr_ * off.stderr_ + on.stderr_ * on.stderr_);
    o.require(off.failures == 0 && on.failures == 0, name + " runs hit limits");
    o.require(std::abs(off.mean - on.mean) <= 3 * se, name + " means differ");
    o.notes << " " << name << ": off " << fmt(off.mean) << "±" << fmt(off.stderr_, 2) << ", on " << fmt(on.mean)
            << "±" << fmt(on.stderr_, 2) << ";";
  };
  compare("simple line k=2", programs::genSimpleLine(2));
  compare("insertion", programs::genInsertion());
}

void c12(Outcome& o) {
  std::set<GridPoint> L;
  std::set<std::uint64_t> acc;
  for (std::uint64_t i = 0; i < 16; ++i) {
    const GridPoint g = programs::detail::snakeCell(i, 4);
    if (g.x == 0 || g.y == 0) acc.insert(i), L.insert(g);
  }
  const std::vector<std::pair<Program, bool>> corpus{
      {programs::genSimpleLine(3), false},
      {programs::genSimpleLine(2), true},
      {programs::genWalker(5), false},
      {programs::genInsertion(), false},
      {programs::genInsertion(), true},
      {programs::genRotation(4), false},
      {programs::genTuringMachine(tm_library::bitFlipper(), "1011"), false},
      {programs::genFastLine(13), false},
      {programs::genSyncLine(8), false},
      {programs::genCounter(8), false},
      {programs::genSquare(4), false},
      {programs::genShape(tm_library::lookupTable(4, acc), 16), false},
      {programs::genPattern(tm_library::checkerboard(2, 1), 4), false},
  };
  std::size_t same = 0, replayed = 0;
  for (const auto& [p, agit] : corpus) {
    auto traceOf = [&](std::uint64_t seed, Trajectory& out) {
      RunOptions opt;
      opt.agitationOn = agit;
      opt.recordDeltas = true;
      opt.limits.maxEvents = agit ? 400 : 5'000'000;
      opt.limits.untilTerminal = !agit;
      out = run(p.initial, p.rules, seed, opt);
      io::TraceHeader h;
      h.seed = seed;
      h.agitation = agit;
      h.rulesHash = io::hex64(io::fnv1a(io::serializeRules(p.rules)));
      h.configHash = io::hex64(io::fnv1a(io::serializeConfiguration(p.initial)));
      std::string text = io::formatTraceHeader(h) + "\n";
      for (const auto& r : out.records) text += io::formatTraceRecord(io::TraceRecord{r.time, r.event}) + "\n";
      return text;
    };
    Trajectory a, b;
    const std::string ta = traceOf(12345, a);
    const std::string tb = traceOf(12345, b);
    same += ta == tb;
    const Configuration back = io::replayTrace(p.initial, p.rules, io::parseTrace(ta));
    const bool ok = back == a.final && replayDeltas(a) == a.final &&
                    io::serializeConfiguration(back) == io::serializeConfiguration(a.final);
    replayed += ok;
    if (ta != tb) o.require(false, p.name + " traces differ");
    if (!ok) o.require(false, p.name + " replay mismatch");
  }
  o.notes << " " << corpus.size() << " programs: identical traces " << same << ", exact replays " << replayed;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, void (*)(Outcome&)>> criteria{
      {"movable-set correctness and cost", c1},
      {"CTMC holding times and choice", c2},
      {"simple line", c3},
      {"insertion constant", c4},
      {"fast line", c5},
      {"synchronized line", c6},
      {"counter", c7},
      {"square", c8},
      {"shape pipeline", c9},
      {"pattern pipeline", c10},
      {"agitation invariance", c11},
      {"determinism and replay", c12},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = since(t0);
    failed += !o.pass;
    std::cout << "criterion " << (i + 1) << " (" << criteria[i].first << "): " << (o.pass ? "PASS" : "FAIL") << " ["
              << fmt(secs, 3) << " s]" << o.notes.str() << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
