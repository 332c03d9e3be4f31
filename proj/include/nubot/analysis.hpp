#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nubot/kinetics.hpp"
#include "nubot/model.hpp"
#include "nubot/rules.hpp"

namespace nubot::analysis {

// ---------------------------------------------------------------------------
// Movable-set oracle
// ---------------------------------------------------------------------------

/// Semantic movable set by subset enumeration over the configuration with the
/// A-B bond removed. Throws TooLarge above 12 monomers. Returns {} when no
/// valid subset exists; throws InvalidArgument if the minimum is not unique.
std::vector<GridPoint> movableSetOracle(const Configuration& c, GridPoint a, GridPoint b, Direction v);

/// True when translating `subset` by v respects every bond and collides with
/// nothing outside it. `ignoreA`/`ignoreB` name a bond to leave out.
bool translationValid(const Configuration& c, const std::vector<GridPoint>& subset, Direction v,
                      std::optional<std::pair<GridPoint, GridPoint>> ignored = std::nullopt);

struct OracleInstance {
  Configuration configuration;
  GridPoint a;
  GridPoint b;
  Direction v = Direction::PlusX;
};

/// 2-10 monomers placed uniformly in a 5x5 window, every adjacent pair bonded
/// null/flexible/rigid with probability 1/3 each; A and B adjacent.
OracleInstance randomOracleInstance(Rng& rng);

// ---------------------------------------------------------------------------
// Exploration
// ---------------------------------------------------------------------------

struct ExploreBounds {
  std::size_t maxMonomers = 64;
  std::size_t maxClasses = 100'000;
};

/// Classes are canonical translation representatives (agitation off).
struct ExplorationResult {
  std::vector<Configuration> producedClasses;
  std::vector<Configuration> terminalClasses;
  bool truncated = false;
  std::size_t statesExplored = 0;
};

ExplorationResult explore(const RuleSet& rs, const Configuration& initial, const ExploreBounds& bounds = {});

enum class Verdict { Yes, No, Inconclusive };

std::string_view toString(Verdict v);

struct UniqueProduction {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Configuration> witness;  // a terminal class differing from target
  std::size_t terminalClasses = 0;
};

UniqueProduction uniquelyProduces(const RuleSet& rs, const Configuration& initial, const Configuration& target,
                                  const ExploreBounds& bounds = {});

/// Exact mean time to absorption of the CTMC from `initial` (agitation off).
/// `absorbing` marks extra absorbing classes besides terminal ones. Throws
/// TooLarge when more than maxClasses classes are reachable and
/// InvalidArgument when absorption is not certain.
double expectedAbsorptionTime(const RuleSet& rs, const Configuration& initial,
                              const std::function<bool(const Configuration&)>& absorbing = {},
                              std::size_t maxClasses = 4000);

// ---------------------------------------------------------------------------
// Timing studies
// ---------------------------------------------------------------------------

struct System {
  RuleSet rules;
  Configuration initial;
};

struct TimingRow {
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  double mean = 0.0;
  double stderr_ = 0.0;
  std::uint64_t failures = 0;  // runs that hit a limit before completion
  std::vector<double> times;
};

struct TimingTable {
  std::vector<TimingRow> rows;
};

struct TimingOptions {
  std::uint64_t trials = 100;
  std::uint64_t seedBase = 1;
  unsigned jobs = 1;
  RunLimits limits{};
  bool agitationOn = false;
  /// Completion predicate; default = terminal. Checked after every event.
  std::function<bool(const Configuration&)> done;
};

/// Trial t of every size uses seed splitmix64(seedBase + t).
TimingTable timingStudy(const std::function<System(std::uint64_t)>& family, const std::vector<std::uint64_t>& sizes,
                        const TimingOptions& options);

/// Mean and standard error (sample std / sqrt(count)).
std::pair<double, double> meanAndStderr(const std::vector<double>& xs);

enum class ScalingModel { Linear, Log, LogSquared };

std::string_view toString(ScalingModel m);

struct ModelFit {
  ScalingModel model = ScalingModel::Linear;
  double intercept = 0.0;
  double slope = 0.0;
  double r2 = 0.0;
  double rss = 0.0;
};

struct FitReport {
  std::vector<ModelFit> fits;
  ScalingModel best = ScalingModel::Linear;
  const ModelFit& fit(ScalingModel m) const;
};

/// Least squares mean ~ a + b * f(n) per model, best = smallest residual sum.
/// Throws DegenerateFit with fewer than 3 rows or when all sizes coincide.
FitReport fitScaling(const TimingTable& table,
                     const std::vector<ScalingModel>& models = {ScalingModel::Linear, ScalingModel::Log,
                                                                ScalingModel::LogSquared});

/// Tab-separated: n, trials, mean, stderr, failures, then the raw times.
std::string serializeTimingTable(const TimingTable& t);
/// "key=value" lines.
std::string serializeFitReport(const FitReport& f);

}  // namespace nubot::analysis
