#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nubot/analysis.hpp"
#include "nubot/error.hpp"
#include "nubot/io.hpp"
#include "nubot/kinetics.hpp"
#include "nubot/programs.hpp"

using namespace nubot;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kLimit = 3, kVerify = 4 };

// Generator failures are the caller's fault; everything else keeps its class.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char* kGenerators = "simpleline walker insertion rotation tm fastline syncline counter square shape pattern";

struct GenParams {
  std::string name;
  std::uint64_t n = 0;
  std::string tmPath;
  std::string input;
  std::string finalState = "final";
};

TMSpec loadTM(const std::string& path) {
  if (path.empty()) throw UsageError("--tm is required for this generator");
  return io::parseTM(io::readFile(path));
}

programs::Program generate(const GenParams& g) {
  try {
    const std::string& s = g.name;
    if (s == "simpleline") return programs::genSimpleLine(g.n);
    if (s == "walker") return programs::genWalker(g.n);
    if (s == "insertion") return programs::genInsertion();
    if (s == "rotation") return programs::genRotation(g.n);
    if (s == "tm") return programs::genTuringMachine(loadTM(g.tmPath), g.input);
    if (s == "fastline") return programs::genFastLine(g.n);
    if (s == "syncline") return programs::genSyncLine(g.n, g.finalState);
    if (s == "counter") return programs::genCounter(g.n);
    if (s == "square") return programs::genSquare(g.n);
    if (s == "shape") return programs::genShape(loadTM(g.tmPath), g.n);
    if (s == "pattern") return programs::genPattern(loadTM(g.tmPath), g.n);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown generator '" + g.name + "' (one of: " + kGenerators + ")");
}

std::string meta(const programs::Program& p, const GenParams& g) {
  std::ostringstream os;
  os << "name=" << p.name << "\n"
     << "n=" << g.n << "\n"
     << "rules=" << p.rules.size() << "\n"
     << "states=" << p.stateCount << "\n"
     << "predicted_scaling=" << programs::toString(p.predictedScaling) << "\n"
     << "initial_monomers=" << p.initial.size() << "\n"
     << "terminal_digest=" << p.terminal.digest() << "\n"
     << "terminal=" << p.terminal.description << "\n";
  return os.str();
}

void addGenFlags(CLI::App* c, GenParams& g) {
  c->add_option("--n,-n", g.n, "size parameter (k for simpleline, track length for walker)");
  c->add_option("--tm", g.tmPath, "Turing machine file (tm, shape, pattern)");
  c->add_option("--input", g.input, "tape input for the tm generator");
  c->add_option("--final", g.finalState, "final state of syncline");
}

std::string bbox(const Configuration& c) {
  if (c.size() == 0) return "empty";
  const BoundingBox b = c.boundingBox();
  return toString(b.min) + ".." + toString(b.max);
}

struct RunArgs {
  std::string rules, init, trace, snapDir, style = "svg";
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> maxEvents;
  std::optional<double> maxTime;
  bool untilTerminal = true;
  bool agitation = false;
  std::uint64_t snapEvery = 0;
};

int cmdRun(const RunArgs& a) {
  if (!a.untilTerminal && !a.maxEvents && !a.maxTime)
    throw UsageError("no stop condition: give --max-events or --max-time with --no-until-terminal");
  const std::string rulesText = io::readFile(a.rules);
  const std::string initText = io::readFile(a.init);
  const RuleSet rs = io::parseRules(rulesText);
  const Configuration init = io::parseConfiguration(initText);

  RunOptions o;
  o.agitationOn = a.agitation;
  o.limits.untilTerminal = a.untilTerminal;
  if (a.maxEvents) o.limits.maxEvents = *a.maxEvents;
  if (a.maxTime) o.limits.maxTime = *a.maxTime;

  std::ofstream trace;
  if (!a.trace.empty()) {
    trace.open(a.trace, std::ios::binary);
    if (!trace) throw UsageError("cannot write " + a.trace);
    io::TraceHeader h;
    h.seed = a.seed;
    h.agitation = a.agitation;
    h.rulesHash = io::hex64(io::fnv1a(io::serializeRules(rs)));
    h.configHash = io::hex64(io::fnv1a(io::serializeConfiguration(init)));
    trace << io::formatTraceHeader(h) << "\n";
  }
  if (a.snapEvery > 0) {
    if (a.snapDir.empty()) throw UsageError("--snapshot-every needs --snapshot-dir");
    fs::create_directories(a.snapDir);
  }
  const auto style = a.style == "ascii" ? io::RenderStyle::Ascii : io::RenderStyle::Svg;
  const std::string ext = a.style == "ascii" ? ".txt" : ".svg";
  std::uint64_t count = 0;
  auto frame = [&](const Configuration& c, std::uint64_t k, double t) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%08llu", static_cast<unsigned long long>(k));
    io::Snapshot s{c, {}, {}, {}, t};
    io::writeFile((fs::path(a.snapDir) / (name + ext)).string(), io::renderSnapshot(s, style));
  };
  if (a.snapEvery > 0) frame(init, 0, 0.0);
  if (trace.is_open() || a.snapEvery > 0)
    o.observer = [&](const Configuration& c, const TrajectoryRecord& r) {
      ++count;
      if (trace.is_open()) trace << io::formatTraceRecord(io::TraceRecord{r.time, r.event}) << "\n";
      if (a.snapEvery > 0 && count % a.snapEvery == 0) frame(c, count, r.time);
    };

  const auto t0 = std::chrono::steady_clock::now();
  const Trajectory tr = run(init, rs, a.seed, o);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << "stop=" << toString(tr.stop) << "\n"
            << "monomers=" << tr.final.size() << "\n"
            << "bbox=" << bbox(tr.final) << "\n"
            << "time=" << tr.time << "\n"
            << "events=" << tr.events << "\n"
            << "wall=" << wall << "\n";
  return tr.stop == StopReason::Terminal ? kOk : kLimit;
}

int cmdGen(GenParams g, const std::string& out) {
  const programs::Program p = generate(g);
  if (!out.empty()) {
    fs::create_directories(out);
    const fs::path d(out);
    io::writeFile((d / "rules.nubot").string(), io::serializeRules(p.rules));
    io::writeFile((d / "init.config").string(), io::serializeConfiguration(p.initial));
    io::writeFile((d / "target.config").string(), io::serializeConfiguration(p.terminal.target));
    io::writeFile((d / "program.meta").string(), meta(p, g));
  }
  std::cout << meta(p, g);
  return kOk;
}

struct BenchArgs {
  GenParams g;
  std::vector<std::uint64_t> sizes;
  std::uint64_t trials = 20, seedBase = 1;
  unsigned jobs = 1;
  std::optional<std::uint64_t> maxEvents;
  bool agitation = false;
  std::string out;
};

int cmdBench(BenchArgs a) {
  if (a.sizes.empty()) throw UsageError("--sizes is required");
  for (std::uint64_t n : a.sizes) {
    GenParams g = a.g;
    g.n = n;
    generate(g);  // surface bad sizes before any run
  }
  analysis::TimingOptions o;
  o.trials = a.trials;
  o.seedBase = a.seedBase;
  o.jobs = a.jobs;
  o.agitationOn = a.agitation;
  if (a.maxEvents) o.limits.maxEvents = *a.maxEvents;
  const auto table = analysis::timingStudy(
      [&](std::uint64_t n) {
        GenParams g = a.g;
        g.n = n;
        programs::Program p = generate(g);
        return analysis::System{std::move(p.rules), std::move(p.initial)};
      },
      a.sizes, o);
  const std::string text = analysis::serializeTimingTable(table);
  if (!a.out.empty()) io::writeFile(a.out, text);
  std::uint64_t failures = 0;
  for (const auto& r : table.rows) {
    std::cout << "n=" << r.n << " trials=" << r.trials << " mean=" << r.mean << " stderr=" << r.stderr_
              << " failures=" << r.failures << "\n";
    failures += r.failures;
  }
  if (table.rows.size() >= 3) {
    const auto fit = analysis::fitScaling(table);
    std::cout << analysis::serializeFitReport(fit);
  } else {
    std::cout << "fit=skipped (needs 3 sizes)\n";
  }
  return failures == 0 ? kOk : kLimit;
}

struct ExploreArgs {
  std::string rules, init, target, dir;
  std::size_t maxMonomers = 64, maxClasses = 100'000;
};

int cmdExplore(ExploreArgs a) {
  if (!a.dir.empty()) {
    const fs::path d(a.dir);
    if (a.rules.empty()) a.rules = (d / "rules.nubot").string();
    if (a.init.empty()) a.init = (d / "init.config").string();
    if (a.target.empty()) a.target = (d / "target.config").string();
  }
  if (a.rules.empty() || a.init.empty()) throw UsageError("--rules and --init (or --dir) are required");
  const RuleSet rs = io::parseRules(io::readFile(a.rules));
  const Configuration init = io::parseConfiguration(io::readFile(a.init));
  const analysis::ExploreBounds bounds{a.maxMonomers, a.maxClasses};
  if (a.target.empty()) {
    const auto r = analysis::explore(rs, init, bounds);
    std::cout << "classes=" << r.producedClasses.size() << "\n"
              << "terminal_classes=" << r.terminalClasses.size() << "\n"
              << "truncated=" << (r.truncated ? "yes" : "no") << "\n";
    return r.truncated ? kLimit : kOk;
  }
  const Configuration target = io::parseConfiguration(io::readFile(a.target));
  const auto u = analysis::uniquelyProduces(rs, init, target, bounds);
  std::cout << "uniquely produces: " << analysis::toString(u.verdict) << "\n"
            << "terminal_classes=" << u.terminalClasses << "\n";
  if (u.witness) std::cout << io::renderSnapshot(io::Snapshot{*u.witness, {}, {}, {}, {}}, io::RenderStyle::Ascii);
  if (u.verdict == analysis::Verdict::Yes) return kOk;
  return u.verdict == analysis::Verdict::No ? kVerify : kLimit;
}

int cmdCheckMovable(std::uint64_t count, std::uint64_t seed, bool verbose) {
  Rng rng(seed);
  std::uint64_t disagreements = 0, ambiguous = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto inst = analysis::randomOracleInstance(rng);
    const auto fast = movableSet(inst.configuration, inst.a, inst.b, inst.v);
    std::vector<GridPoint> slow;
    try {
      slow = analysis::movableSetOracle(inst.configuration, inst.a, inst.b, inst.v);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InvalidArgument) throw;
      ++ambiguous;
      continue;
    }
    if (fast != slow) {
      ++disagreements;
      if (verbose)
        std::cout << "instance " << i << " arm=" << toString(inst.a) << " base=" << toString(inst.b)
                  << " v=" << toString(inst.v) << "\n"
                  << io::serializeConfiguration(inst.configuration);
    }
  }
  std::cout << "instances=" << count << "\n"
            << "disagreements=" << disagreements << "\n"
            << "oracle_ambiguous=" << ambiguous << "\n";
  return disagreements == 0 ? kOk : kVerify;
}

struct RenderArgs {
  std::string config, rules, init, trace, out, style = "svg";
  std::optional<std::size_t> atEvent;
  std::vector<std::string> movable;  // arm x, arm y, base x, base y, direction
};

int cmdRender(const RenderArgs& a) {
  Configuration c;
  if (!a.trace.empty()) {
    if (a.rules.empty() || a.init.empty()) throw UsageError("--trace needs --rules and --init");
    const RuleSet rs = io::parseRules(io::readFile(a.rules));
    const Configuration init = io::parseConfiguration(io::readFile(a.init));
    const io::Trace tr = io::parseTrace(io::readFile(a.trace));
    c = io::replayTrace(init, rs, tr, a.atEvent.value_or(SIZE_MAX));
  } else if (!a.config.empty()) {
    c = io::parseConfiguration(io::readFile(a.config));
  } else if (!a.init.empty()) {
    c = io::parseConfiguration(io::readFile(a.init));
  } else {
    throw UsageError("give --config, or --trace with --rules and --init");
  }
  io::Snapshot s{c, {}, {}, {}, {}};
  if (!a.movable.empty()) {
    if (a.movable.size() != 5) throw UsageError("--movable takes AX AY BX BY DIR");
    const auto dir = parseDirection(a.movable[4]);
    if (!dir) throw UsageError("bad direction '" + a.movable[4] + "'");
    const GridPoint arm{std::stoi(a.movable[0]), std::stoi(a.movable[1])};
    const GridPoint base{std::stoi(a.movable[2]), std::stoi(a.movable[3])};
    MovableTrace mt;
    s.movable = movableSet(c, arm, base, *dir, &mt);
    for (const auto& f : mt.frontiers) s.frontier.insert(s.frontier.end(), f.begin(), f.end());
    for (const auto& b : mt.blocking) s.blocking.insert(s.blocking.end(), b.begin(), b.end());
  }
  const std::string doc = io::renderSnapshot(s, a.style == "ascii" ? io::RenderStyle::Ascii : io::RenderStyle::Svg);
  if (a.out.empty()) std::cout << doc;
  else io::writeFile(a.out, doc);
  return kOk;
}

const char* kFooter = R"(Files: rules "nubot-rules v1", configurations "nubot-config v1", machines "tm v1",
traces "# nubot-trace v1" (one event per line).
ASCII rendering: one text row per grid row, top row = largest y, each row
shifted one column right per unit of y; a monomer shows the first character of
its state, '*' marks movable-set members, '.' an empty site.
Exit codes: 0 ok/terminal, 1 usage, 2 parse/validation, 3 limit stop, 4 verification failure.)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nubot: active self-assembly simulator"};
  app.footer(kFooter);
  app.require_subcommand(1);

  RunArgs ra;
  auto* run = app.add_subcommand("run", "simulate one trajectory");
  run->add_option("--rules", ra.rules, "rule file")->required();
  run->add_option("--init", ra.init, "initial configuration")->required();
  run->add_option("--seed", ra.seed, "random seed");
  run->add_option("--max-events", ra.maxEvents, "stop after this many events");
  run->add_option("--max-time", ra.maxTime, "stop at this model time");
  run->add_flag("--until-terminal,!--no-until-terminal", ra.untilTerminal, "stop when no rule applies (default on)");
  run->add_flag("--agitation", ra.agitation, "enable agitation steps");
  run->add_option("--trace", ra.trace, "write the event trace here");
  run->add_option("--snapshot-every", ra.snapEvery, "write a frame every k events");
  run->add_option("--snapshot-dir", ra.snapDir, "directory for numbered frames");
  run->add_option("--style", ra.style, "frame style")->check(CLI::IsMember({"svg", "ascii"}));

  GenParams gp;
  std::string genOut;
  auto* gen = app.add_subcommand("gen", "write a generated program");
  gen->add_option("name", gp.name, std::string("generator: ") + kGenerators)->required();
  addGenFlags(gen, gp);
  gen->add_option("-o,--out", genOut, "output directory (rules.nubot, init.config, target.config, program.meta)");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "timing study and scaling fit");
  bench->add_option("family", ba.g.name, std::string("generator: ") + kGenerators)->required();
  bench->add_option("--sizes", ba.sizes, "comma-separated sizes")->delimiter(',')->required();
  bench->add_option("--trials", ba.trials, "runs per size");
  bench->add_option("--seed-base", ba.seedBase, "trial t uses splitmix64(seed-base + t)");
  bench->add_option("--jobs", ba.jobs, "worker threads");
  bench->add_option("--max-events", ba.maxEvents, "per-run event limit");
  bench->add_flag("--agitation", ba.agitation, "enable agitation steps");
  bench->add_option("--tm", ba.g.tmPath, "Turing machine file (shape, pattern)");
  bench->add_option("--input", ba.g.input, "tape input for the tm family");
  bench->add_option("-o,--out", ba.out, "timing table file");

  ExploreArgs ea;
  auto* explore = app.add_subcommand("explore", "exhaustive reachability up to translation");
  explore->add_option("--rules", ea.rules, "rule file");
  explore->add_option("--init", ea.init, "initial configuration");
  explore->add_option("--target", ea.target, "expected terminal; checks unique production");
  explore->add_option("--dir", ea.dir, "directory written by gen");
  explore->add_option("--max-monomers", ea.maxMonomers, "abandon branches above this size");
  explore->add_option("--max-classes", ea.maxClasses, "stop after this many classes");

  std::uint64_t cmCount = 1000, cmSeed = 1;
  bool cmVerbose = false;
  auto* cm = app.add_subcommand("check-movable", "compare the movable-set algorithm with brute force");
  cm->add_option("--random", cmCount, "random instances");
  cm->add_option("--seed", cmSeed, "random seed");
  cm->add_flag("--verbose", cmVerbose, "print disagreeing instances");

  RenderArgs rda;
  auto* render = app.add_subcommand("render", "render a configuration or a trace frame");
  render->add_option("--config", rda.config, "configuration file");
  render->add_option("--rules", rda.rules, "rule file (with --trace)");
  render->add_option("--init", rda.init, "initial configuration (with --trace)");
  render->add_option("--trace", rda.trace, "trace file");
  render->add_option("--at-event", rda.atEvent, "replay this many events");
  render->add_option("--style", rda.style, "output style")->check(CLI::IsMember({"svg", "ascii"}));
  render->add_option("--movable", rda.movable, "highlight the movable set: AX AY BX BY DIR")->expected(5);
  render->add_option("-o,--out", rda.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmdRun(ra);
    if (*gen) return cmdGen(gp, genOut);
    if (*bench) return cmdBench(ba);
    if (*explore) return cmdExplore(ea);
    if (*cm) return cmdCheckMovable(cmCount, cmSeed, cmVerbose);
    if (*render) return cmdRender(rda);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool parse = e.code() == ErrorCode::Parse || e.code() == ErrorCode::Validation;
    return parse ? kParse : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
