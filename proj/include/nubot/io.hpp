#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nubot/kinetics.hpp"
#include "nubot/model.hpp"
#include "nubot/rules.hpp"
#include "nubot/tm.hpp"

namespace nubot::io {

// Configuration: "nubot-config v1", then "M <x> <y> <state>" sorted by
// position, then "B <x1> <y1> <x2> <y2> <r|f>" with (x1,y1) < (x2,y2).
std::string serializeConfiguration(const Configuration& c);
Configuration parseConfiguration(std::string_view text);

// Rules: "nubot-rules v1", then "<s1> <s2> <b> <u> -> <s1'> <s2'> <b'> <u'>"
// with '-' for EMPTY and an optional trailing "# <label>". Full-line '#'
// comments and blank lines are skipped.
std::string serializeRules(const RuleSet& rs);
RuleSet parseRules(std::string_view text);
std::string formatRule(const Rule& r);
/// One rule in the rule-file line syntax; throws ParseError (line 1).
Rule parseRule(std::string_view line);

// Turing machines: "tm v1", "START q", "ACCEPT q", "REJECT q",
// "D <q> <a> <q'> <a'> <L|R>".
std::string serializeTM(const TMSpec& tm);
TMSpec parseTM(std::string_view text);

/// 64-bit FNV-1a, printed as 16 hex digits in trace headers.
std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t v);

struct TraceHeader {
  std::uint64_t seed = 0;
  bool agitation = false;
  std::string rng = Rng::kName;
  std::string rulesHash;
  std::string configHash;
  bool operator==(const TraceHeader&) const = default;
};

struct TraceRecord {
  double time = 0.0;
  Event event;
  bool operator==(const TraceRecord&) const = default;
};

/// Line-oriented trace. Header: "# nubot-trace v1 seed=.. agitation=0|1 rng=..
/// rules=<hex> config=<hex>". Records: "t=<%.17g> kind=<nonmove|move|agit>
/// rule=<index|-> p1=<x,y> p2=<x,y> arm=<1|2|->".
std::string formatTraceHeader(const TraceHeader& h);
std::string formatTraceRecord(const TraceRecord& r);

struct Trace {
  TraceHeader header;
  std::vector<TraceRecord> records;
};

Trace parseTrace(std::string_view text);

/// Applies every trace record in order to `initial`.
Configuration replayTrace(const Configuration& initial, const RuleSet& rs, const Trace& trace,
                          std::size_t upTo = SIZE_MAX);

struct Snapshot {
  Configuration configuration;
  std::vector<GridPoint> movable;
  std::vector<GridPoint> frontier;
  std::vector<GridPoint> blocking;
  std::optional<double> time;
};

enum class RenderStyle { Svg, Ascii };

/// SVG: unit disks at (x + y/2, y*sqrt(3)/2), rigid bonds as solid midpoint
/// dots, flexible bonds as open circles; highlight classes "movable",
/// "frontier", "blocking".
/// ASCII: one text row per grid row, top row = largest y, each row shifted
/// right by one column per unit of y; a monomer prints the first character
/// of its state, '*' for movable-set members, '.' for empty sites.
std::string renderSnapshot(const Snapshot& s, RenderStyle style);

std::string readFile(const std::string& path);
void writeFile(const std::string& path, std::string_view contents);

}  // namespace nubot::io
