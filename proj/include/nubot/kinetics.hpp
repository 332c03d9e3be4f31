#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "nubot/grid.hpp"
#include "nubot/model.hpp"
#include "nubot/rules.hpp"

namespace nubot {

// ---------------------------------------------------------------------------
// Movable and agitation sets
// ---------------------------------------------------------------------------

/// Rounds of the greedy frontier expansion, kept for rendering and tests.
struct MovableTrace {
  std::vector<std::vector<GridPoint>> frontiers;
  std::vector<std::vector<GridPoint>> blocking;
  bool blockedByBase = false;
};

/// Greedy frontier/blocking expansion. With `base` set, returns {} as soon as
/// the base enters a blocking set and ignores the arm-base bond. Result sorted.
std::vector<GridPoint> movableSet(const Configuration& c, GridPoint arm, GridPoint base,
                                  Direction v, MovableTrace* trace = nullptr);

/// Minimal translatable set containing `a` (never empty). Result sorted.
std::vector<GridPoint> agitationSet(const Configuration& c, GridPoint a, Direction v);

// ---------------------------------------------------------------------------
// Events
// ---------------------------------------------------------------------------

enum class EventKind : std::uint8_t { NonMovement, Movement, Agitation };

struct Event {
  EventKind kind = EventKind::NonMovement;
  std::uint32_t rule = 0;  // unused for agitation
  GridPoint p1;            // s1 site, or the agitated monomer
  GridPoint p2;            // s2 site, or p1 + agitation direction
  Arm arm = Arm::None;
  Direction agitation = Direction::PlusX;

  bool operator==(const Event&) const = default;
};

/// Arm position, base position and translation of a movement event.
struct MovementGeometry {
  GridPoint arm;
  GridPoint base;
  Direction v;
};

MovementGeometry movementGeometry(const Rule& r, const Event& e);

/// Applies a movement event; throws Blocked when the movable set is empty.
void applyMovement(Configuration& c, const RuleSet& rs, const Event& e);
/// Applies a non-movement rule; throws StaleEvent if the lhs no longer matches.
void applyNonMovement(Configuration& c, const RuleSet& rs, const Event& e);
void applyAgitation(Configuration& c, GridPoint a, Direction v);

void applyEvent(Configuration& c, const RuleSet& rs, const Event& e);

/// Every applicable transition: matched non-movement rules, movement rules per
/// arm choice with a non-empty movable set, and 6 agitation steps per monomer.
std::vector<Event> enumerateApplicable(const Configuration& c, const RuleSet& rs, bool agitationOn);

// ---------------------------------------------------------------------------
// Randomness
// ---------------------------------------------------------------------------

/// mt19937_64 with hand-rolled variate transforms so that seeded runs are
/// identical across standard libraries. Trial streams are derived with
/// splitmix64(seedBase + trial).
class Rng {
 public:
  static constexpr const char* kName = "mt19937_64/splitmix64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  static Rng forTrial(std::uint64_t seedBase, std::uint64_t trial);

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  double exponential(double rate);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

// ---------------------------------------------------------------------------
// Stepper
// ---------------------------------------------------------------------------

struct StepResult {
  Event event;
  double dt = 0.0;
  std::size_t applicable = 0;
};

/// One CTMC transition; nullopt when the configuration is terminal.
std::optional<StepResult> step(Configuration& c, const RuleSet& rs, Rng& rng, bool agitationOn);

/// Cells that changed in one transition: (position, before, after).
struct CellChange {
  GridPoint position;
  std::optional<Configuration::Cell> before;
  std::optional<Configuration::Cell> after;
};

struct TrajectoryRecord {
  double time = 0.0;
  Event event;
  std::vector<CellChange> delta;
};

enum class StopReason { Terminal, EventLimit, TimeLimit };

std::string_view toString(StopReason r);

struct RunLimits {
  std::uint64_t maxEvents = UINT64_MAX;
  double maxTime = std::numeric_limits<double>::infinity();
  bool untilTerminal = true;
};

struct RunOptions {
  RunLimits limits;
  bool agitationOn = false;
  bool recordDeltas = false;
  /// Called after each applied event with the post-event configuration.
  std::function<void(const Configuration&, const TrajectoryRecord&)> observer;
};

struct Trajectory {
  Configuration initial;
  std::uint64_t seed = 0;
  bool agitationOn = false;
  std::vector<TrajectoryRecord> records;  // deltas filled only when recorded
  Configuration final;
  double time = 0.0;
  std::uint64_t events = 0;
  StopReason stop = StopReason::Terminal;
};

Trajectory run(const Configuration& initial, const RuleSet& rs, std::uint64_t seed,
               const RunOptions& options = {});

/// Replays the recorded deltas from the initial configuration.
Configuration replayDeltas(const Trajectory& t);

}  // namespace nubot
