#include "nubot/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "nubot/error.hpp"
#include "nubot/io.hpp"

namespace nubot::analysis {

bool translationValid(const Configuration& c, const std::vector<GridPoint>& subset, Direction v,
                      std::optional<std::pair<GridPoint, GridPoint>> ignored) {
  std::unordered_set<GridPoint> in(subset.begin(), subset.end());
  const GridPoint dv = vec(v);
  auto isIgnored = [&](GridPoint x, GridPoint y) {
    return ignored && ((x == ignored->first && y == ignored->second) || (x == ignored->second && y == ignored->first));
  };
  for (GridPoint x : subset) {
    const GridPoint t = x + dv;
    if (c.occupied(t) && !in.count(t)) return false;
    for (Direction d : kDirections) {
      BondType b = c.bond(x, d);
      if (b == BondType::Null) continue;
      GridPoint y = x + vec(d);
      if (in.count(y) || isIgnored(x, y)) continue;
      if (b == BondType::Rigid) return false;
      if (hexDistance(t, y) != 1) return false;
    }
  }
  return true;
}

std::vector<GridPoint> movableSetOracle(const Configuration& c, GridPoint a, GridPoint b, Direction v) {
  if (c.size() > 12) throw Error(ErrorCode::TooLarge, "oracle limited to 12 monomers");
  if (!c.occupied(a)) throw Error(ErrorCode::MonomerNotFound, toString(a));
  if (!c.occupied(b)) throw Error(ErrorCode::MonomerNotFound, toString(b));
  std::vector<GridPoint> others;
  for (GridPoint p : c.positions())
    if (p != a && p != b) others.push_back(p);
  const std::size_t m = others.size();
  std::vector<std::uint32_t> valid;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<GridPoint> s{a};
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1u) s.push_back(others[i]);
    if (translationValid(c, s, v, std::pair{a, b})) valid.push_back(mask);
  }
  std::vector<std::uint32_t> minimal;
  for (std::uint32_t x : valid) {
    bool isMin = true;
    for (std::uint32_t y : valid)
      if (y != x && (y & x) == y) {
        isMin = false;
        break;
      }
    if (isMin) minimal.push_back(x);
  }
  if (minimal.empty()) return {};
  if (minimal.size() > 1) throw Error(ErrorCode::InvalidArgument, "movable set minimum is not unique");
  std::vector<GridPoint> out{a};
  for (std::size_t i = 0; i < m; ++i)
    if (minimal[0] >> i & 1u) out.push_back(others[i]);
  std::sort(out.begin(), out.end());
  return out;
}

OracleInstance randomOracleInstance(Rng& rng) {
  static const StateId kStates[] = {StateId::of("a"), StateId::of("b"), StateId::of("c")};
  while (true) {
    const std::size_t count = 2 + rng.below(9);
    std::vector<GridPoint> window;
    for (int x = 0; x < 5; ++x)
      for (int y = 0; y < 5; ++y) window.push_back({x, y});
    // Partial Fisher-Yates for a uniform placement.
    for (std::size_t i = 0; i < count; ++i) std::swap(window[i], window[i + rng.below(window.size() - i)]);
    window.resize(count);
    OracleInstance inst;
    for (GridPoint p : window) inst.configuration.place(p, kStates[rng.below(3)]);
    for (GridPoint p : window)
      for (Direction d : kDirections) {
        GridPoint q = p + vec(d);
        if (!(p < q) || !inst.configuration.occupied(q)) continue;
        inst.configuration.setBond(p, d, static_cast<BondType>(rng.below(3)));
      }
    inst.a = window[rng.below(count)];
    inst.b = window[rng.below(count)];
    inst.v = directionFromIndex(static_cast<int>(rng.below(6)));
    if (hexDistance(inst.a, inst.b) == 1) return inst;
  }
}

// ---------------------------------------------------------------------------

namespace {

struct ClassGraph {
  std::vector<Configuration> classes;
  std::vector<std::vector<std::size_t>> successors;  // one entry per applicable event
  bool truncated = false;
};

ClassGraph buildClassGraph(const RuleSet& rs, const Configuration& initial, const ExploreBounds& bounds,
                           const std::function<bool(const Configuration&)>& stopAt) {
  ClassGraph g;
  std::unordered_map<std::string, std::size_t> ids;
  auto intern = [&](Configuration c) -> std::optional<std::size_t> {
    c = canonicalize(c);
    std::string key = io::serializeConfiguration(c);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    if (g.classes.size() >= bounds.maxClasses) {
      g.truncated = true;
      return std::nullopt;
    }
    ids.emplace(std::move(key), g.classes.size());
    g.classes.push_back(std::move(c));
    g.successors.emplace_back();
    return g.classes.size() - 1;
  };
  intern(initial);
  for (std::size_t i = 0; i < g.classes.size(); ++i) {
    const Configuration cur = g.classes[i];
    if (cur.size() > bounds.maxMonomers) {
      g.truncated = true;
      continue;
    }
    if (stopAt && stopAt(cur)) continue;
    for (const Event& e : enumerateApplicable(cur, rs, false)) {
      Configuration next = cur;
      applyEvent(next, rs, e);
      auto id = intern(std::move(next));
      if (!id) break;
      g.successors[i].push_back(*id);
    }
    if (g.truncated) break;
  }
  return g;
}

}  // namespace

ExplorationResult explore(const RuleSet& rs, const Configuration& initial, const ExploreBounds& bounds) {
  ClassGraph g = buildClassGraph(rs, initial, bounds, {});
  ExplorationResult r;
  r.truncated = g.truncated;
  r.statesExplored = g.classes.size();
  for (std::size_t i = 0; i < g.classes.size(); ++i)
    if (g.successors[i].empty() && enumerateApplicable(g.classes[i], rs, false).empty())
      r.terminalClasses.push_back(g.classes[i]);
  r.producedClasses = std::move(g.classes);
  return r;
}

std::string_view toString(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

UniqueProduction uniquelyProduces(const RuleSet& rs, const Configuration& initial, const Configuration& target,
                                  const ExploreBounds& bounds) {
  ExplorationResult ex = explore(rs, initial, bounds);
  UniqueProduction out;
  out.terminalClasses = ex.terminalClasses.size();
  const Configuration want = canonicalize(target);
  for (const auto& t : ex.terminalClasses)
    if (!(t == want)) {
      out.verdict = Verdict::No;
      out.witness = t;
      return out;
    }
  if (ex.truncated) return out;
  out.verdict = ex.terminalClasses.empty() ? Verdict::No : Verdict::Yes;
  return out;
}

double expectedAbsorptionTime(const RuleSet& rs, const Configuration& initial,
                              const std::function<bool(const Configuration&)>& absorbing, std::size_t maxClasses) {
  ExploreBounds b;
  b.maxClasses = maxClasses;
  b.maxMonomers = SIZE_MAX;
  ClassGraph g = buildClassGraph(rs, initial, b, absorbing);
  if (g.truncated) throw Error(ErrorCode::TooLarge, "more than " + std::to_string(maxClasses) + " classes");
  const std::size_t n = g.classes.size();
  // E_i * k_i - sum_j E_j = 1 for transient i; E_i = 0 for absorbing i.
  std::vector<std::vector<double>> m(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& succ = g.successors[i];
    if (succ.empty()) {
      m[i][i] = 1.0;
      continue;
    }
    m[i][i] += static_cast<double>(succ.size());
    for (std::size_t j : succ) m[i][j] -= 1.0;
    m[i][n] = 1.0;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) < 1e-12) throw Error(ErrorCode::InvalidArgument, "absorption is not certain");
    std::swap(m[col], m[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0.0) continue;
      const double f = m[r][col] / m[col][col];
      for (std::size_t k = col; k <= n; ++k) m[r][k] -= f * m[col][k];
    }
  }
  return m[0][n] / m[0][0];
}

// ---------------------------------------------------------------------------

std::pair<double, double> meanAndStderr(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return {mean, sd / std::sqrt(static_cast<double>(xs.size()))};
}

TimingTable timingStudy(const std::function<System(std::uint64_t)>& family, const std::vector<std::uint64_t>& sizes,
                        const TimingOptions& options) {
  if (options.trials < 2) throw Error(ErrorCode::InvalidArgument, "timingStudy needs at least 2 trials");
  TimingTable table;
  for (std::uint64_t n : sizes) {
    const System sys = family(n);
    std::vector<double> times(options.trials, 0.0);
    std::vector<char> ok(options.trials, 0);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
      while (true) {
        const std::uint64_t t = next.fetch_add(1);
        if (t >= options.trials) return;
        Rng rng(splitmix64(options.seedBase + t));
        Configuration c = sys.initial;
        double time = 0.0;
        std::uint64_t events = 0;
        bool done = options.done && options.done(c);
        while (!done) {
          if (events >= options.limits.maxEvents) break;
          auto st = step(c, sys.rules, rng, options.agitationOn);
          if (!st) {
            done = !options.done;
            break;
          }
          time += st->dt;
          ++events;
          if (time > options.limits.maxTime) break;
          if (options.done) done = options.done(c);
        }
        times[t] = time;
        ok[t] = done;
      }
    };
    const unsigned jobs = std::max(1u, options.jobs);
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    TimingRow row;
    row.n = n;
    row.trials = options.trials;
    for (std::uint64_t t = 0; t < options.trials; ++t) {
      if (ok[t])
        row.times.push_back(times[t]);
      else
        ++row.failures;
    }
    std::tie(row.mean, row.stderr_) = meanAndStderr(row.times);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string_view toString(ScalingModel m) {
  switch (m) {
    case ScalingModel::Linear: return "n";
    case ScalingModel::Log: return "log n";
    case ScalingModel::LogSquared: return "log^2 n";
  }
  return "?";
}

const ModelFit& FitReport::fit(ScalingModel m) const {
  for (const auto& f : fits)
    if (f.model == m) return f;
  throw Error(ErrorCode::InvalidArgument, "model not fitted");
}

FitReport fitScaling(const TimingTable& table, const std::vector<ScalingModel>& models) {
  if (table.rows.size() < 3) throw Error(ErrorCode::DegenerateFit, "need at least 3 sizes");
  bool distinct = false;
  for (const auto& r : table.rows)
    if (r.n != table.rows.front().n) distinct = true;
  if (!distinct) throw Error(ErrorCode::DegenerateFit, "all sizes are equal");
  FitReport rep;
  for (ScalingModel m : models) {
    std::vector<double> xs, ys;
    for (const auto& r : table.rows) {
      const double n = static_cast<double>(r.n);
      const double l = std::log2(n);
      xs.push_back(m == ScalingModel::Linear ? n : m == ScalingModel::Log ? l : l * l);
      ys.push_back(r.mean);
    }
    const double k = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= k;
    my /= k;
    double sxx = 0, sxy = 0, tss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
      tss += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0) throw Error(ErrorCode::DegenerateFit, "predictor is constant");
    ModelFit f;
    f.model = m;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double e = ys[i] - (f.intercept + f.slope * xs[i]);
      f.rss += e * e;
    }
    f.r2 = tss > 0 ? 1.0 - f.rss / tss : 1.0;
    rep.fits.push_back(f);
  }
  rep.best = std::min_element(rep.fits.begin(), rep.fits.end(), [](const ModelFit& a, const ModelFit& b) {
               return a.rss < b.rss;
             })->model;
  return rep;
}

std::string serializeTimingTable(const TimingTable& t) {
  std::ostringstream os;
  os.precision(17);
  os << "n\ttrials\tmean\tstderr\tfailures\ttimes\n";
  for (const auto& r : t.rows) {
    os << r.n << '\t' << r.trials << '\t' << r.mean << '\t' << r.stderr_ << '\t' << r.failures << '\t';
    for (std::size_t i = 0; i < r.times.size(); ++i) os << (i ? "," : "") << r.times[i];
    os << '\n';
  }
  return os.str();
}

std::string serializeFitReport(const FitReport& f) {
  std::ostringstream os;
  os.precision(10);
  os << "best=" << toString(f.best) << '\n';
  for (const auto& m : f.fits) {
    std::string key(toString(m.model));
    std::replace(key.begin(), key.end(), ' ', '_');
    os << key << ".intercept=" << m.intercept << '\n'
       << key << ".slope=" << m.slope << '\n'
       << key << ".r2=" << m.r2 << '\n'
       << key << ".rss=" << m.rss << '\n';
  }
  return os.str();
}

}  // namespace nubot::analysis
