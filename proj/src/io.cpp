#include "nubot/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "nubot/error.hpp"

namespace nubot::io {

namespace {

struct Token {
  std::string_view text;
  int column;  // 1-based
};

struct Line {
  int number;
  std::vector<Token> tokens;
  std::string_view comment;  // text after a trailing '#', trimmed
  bool hasComment = false;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<Line> tokenize(std::string_view text, bool splitComments) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    ++number;
    Line line{number, {}, {}, false};
    std::size_t i = 0;
    while (i < raw.size()) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      if (splitComments && raw[i] == '#') {
        line.hasComment = true;
        line.comment = trim(raw.substr(i + 1));
        break;
      }
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      line.tokens.push_back({raw.substr(i, j - i), static_cast<int>(i) + 1});
      i = j;
    }
    out.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

[[noreturn]] void fail(const Line& l, std::size_t tok, const std::string& what) {
  int col = tok < l.tokens.size() ? l.tokens[tok].column : 1;
  throw ParseError(l.number, col, what);
}

std::int64_t parseInt(const Line& l, std::size_t tok) {
  if (tok >= l.tokens.size()) fail(l, tok, "missing integer");
  std::string s(l.tokens[tok].text);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    fail(l, tok, "expected integer, got '" + s + "'");
  }
  if (used != s.size()) fail(l, tok, "expected integer, got '" + s + "'");
  return v;
}

std::uint64_t parseU64(std::string_view s, const Line& l, std::size_t tok) {
  std::string str(s);
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(str, &used);
  } catch (const std::exception&) {
    fail(l, tok, "expected unsigned integer, got '" + str + "'");
  }
  if (used != str.size()) fail(l, tok, "expected unsigned integer, got '" + str + "'");
  return v;
}

double parseDouble(std::string_view s, const Line& l, std::size_t tok) {
  std::string str(s);
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(str, &used);
  } catch (const std::exception&) {
    fail(l, tok, "expected number, got '" + str + "'");
  }
  if (used != str.size()) fail(l, tok, "expected number, got '" + str + "'");
  return v;
}

StateId parseState(const Line& l, std::size_t tok, bool allowEmpty) {
  std::string_view s = l.tokens[tok].text;
  if (s == "-") {
    if (!allowEmpty) fail(l, tok, "EMPTY state not allowed here");
    return kEmpty;
  }
  try {
    return StateId::of(s);
  } catch (const Error& e) {
    fail(l, tok, e.what());
  }
}

BondType parseBond(const Line& l, std::size_t tok) {
  std::string_view s = l.tokens[tok].text;
  if (s == "n") return BondType::Null;
  if (s == "f") return BondType::Flexible;
  if (s == "r") return BondType::Rigid;
  fail(l, tok, "expected bond type n, f or r, got '" + std::string(s) + "'");
}

Direction parseDir(const Line& l, std::size_t tok) {
  auto d = parseDirection(l.tokens[tok].text);
  if (!d) fail(l, tok, "expected direction, got '" + std::string(l.tokens[tok].text) + "'");
  return *d;
}

void expectHeader(const std::vector<Line>& lines, std::size_t& i, std::string_view a, std::string_view b) {
  while (i < lines.size() && lines[i].tokens.empty()) ++i;
  if (i == lines.size()) throw ParseError(lines.empty() ? 1 : lines.back().number, 1, "missing header");
  const Line& l = lines[i];
  if (l.tokens.size() != 2 || l.tokens[0].text != a || l.tokens[1].text != b)
    fail(l, 0, "expected header '" + std::string(a) + " " + std::string(b) + "'");
  ++i;
}

std::string stateName(StateId s) { return s.isEmpty() ? std::string("-") : s.name(); }

}  // namespace

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

std::string serializeConfiguration(const Configuration& c) {
  std::ostringstream os;
  os << "nubot-config v1\n";
  auto ps = c.positions();
  for (GridPoint p : ps) os << "M " << p.x << ' ' << p.y << ' ' << c.stateAt(p).name() << '\n';
  for (GridPoint p : ps) {
    for (Direction d : kDirections) {
      GridPoint q = p + vec(d);
      if (!(p < q)) continue;
      BondType b = c.bond(p, d);
      if (b == BondType::Null) continue;
      os << "B " << p.x << ' ' << p.y << ' ' << q.x << ' ' << q.y << ' ' << toString(b) << '\n';
    }
  }
  return os.str();
}

Configuration parseConfiguration(std::string_view text) {
  auto lines = tokenize(text, true);
  std::size_t i = 0;
  expectHeader(lines, i, "nubot-config", "v1");
  Configuration c;
  for (; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens.empty()) continue;
    std::string_view kind = l.tokens[0].text;
    if (kind == "M") {
      if (l.tokens.size() != 4) fail(l, 0, "expected 'M x y state'");
      GridPoint p{static_cast<std::int32_t>(parseInt(l, 1)), static_cast<std::int32_t>(parseInt(l, 2))};
      StateId s = parseState(l, 3, false);
      if (c.occupied(p)) fail(l, 1, "position " + toString(p) + " already occupied");
      c.place(p, s);
    } else if (kind == "B") {
      if (l.tokens.size() != 6) fail(l, 0, "expected 'B x1 y1 x2 y2 r|f'");
      GridPoint p{static_cast<std::int32_t>(parseInt(l, 1)), static_cast<std::int32_t>(parseInt(l, 2))};
      GridPoint q{static_cast<std::int32_t>(parseInt(l, 3)), static_cast<std::int32_t>(parseInt(l, 4))};
      BondType b = parseBond(l, 5);
      auto d = directionBetween(p, q);
      if (!d) fail(l, 1, "bond endpoints are not adjacent");
      if (!c.occupied(p)) fail(l, 1, "no monomer at " + toString(p));
      if (!c.occupied(q)) fail(l, 3, "no monomer at " + toString(q));
      c.setBond(p, *d, b);
    } else {
      fail(l, 0, "unknown record '" + std::string(kind) + "'");
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Rules
// ---------------------------------------------------------------------------

std::string formatRule(const Rule& r) {
  std::string s = stateName(r.lhs.s1) + ' ' + stateName(r.lhs.s2) + ' ' + std::string(toString(r.lhs.bond)) +
                  ' ' + std::string(toString(r.lhs.dir)) + " -> " + stateName(r.rhs.s1) + ' ' +
                  stateName(r.rhs.s2) + ' ' + std::string(toString(r.rhs.bond)) + ' ' +
                  std::string(toString(r.rhs.dir));
  if (!r.label.empty()) s += " # " + r.label;
  return s;
}

std::string serializeRules(const RuleSet& rs) {
  std::string out = "nubot-rules v1\n";
  for (const Rule& r : rs) out += formatRule(r) + '\n';
  return out;
}

namespace {

Rule ruleFromLine(const Line& l) {
  if (l.tokens.size() != 9 || l.tokens[4].text != "->") fail(l, 0, "expected 's1 s2 b u -> s1' s2' b' u''");
  Rule r;
  r.lhs = {parseState(l, 0, true), parseState(l, 1, true), parseBond(l, 2), parseDir(l, 3)};
  r.rhs = {parseState(l, 5, true), parseState(l, 6, true), parseBond(l, 7), parseDir(l, 8)};
  if (l.hasComment) r.label = std::string(l.comment);
  if (auto err = validateRule(r)) fail(l, 0, "invalid rule: " + std::string(toString(*err)));
  return r;
}

}  // namespace

Rule parseRule(std::string_view line) {
  auto lines = tokenize(line, true);
  if (lines.size() != 1 || lines[0].tokens.empty()) throw ParseError(1, 1, "expected a single rule");
  return ruleFromLine(lines[0]);
}

RuleSet parseRules(std::string_view text) {
  auto lines = tokenize(text, true);
  std::size_t i = 0;
  expectHeader(lines, i, "nubot-rules", "v1");
  RuleSet rs;
  for (; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens.empty()) continue;
    rs.add(ruleFromLine(l));
  }
  return rs;
}

// ---------------------------------------------------------------------------
// Turing machines
// ---------------------------------------------------------------------------

std::string serializeTM(const TMSpec& tm) {
  std::ostringstream os;
  os << "tm v1\nSTART " << tm.start << '\n';
  for (const auto& q : tm.accept) os << "ACCEPT " << q << '\n';
  for (const auto& q : tm.reject) os << "REJECT " << q << '\n';
  for (const auto& [key, t] : tm.delta)
    os << "D " << key.first << ' ' << toChar(key.second) << ' ' << t.next << ' ' << toChar(t.write) << ' '
       << static_cast<char>(t.move) << '\n';
  return os.str();
}

TMSpec parseTM(std::string_view text) {
  auto lines = tokenize(text, true);
  std::size_t i = 0;
  expectHeader(lines, i, "tm", "v1");
  TMSpec tm;
  bool haveStart = false;
  auto symbol = [](const Line& l, std::size_t tok) {
    std::string_view s = l.tokens[tok].text;
    std::optional<TapeSymbol> sym = s.size() == 1 ? parseTapeSymbol(s[0]) : std::nullopt;
    if (!sym) fail(l, tok, "expected tape symbol 0, 1, _ or B");
    return *sym;
  };
  for (; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens.empty()) continue;
    std::string_view kind = l.tokens[0].text;
    if (kind == "START" || kind == "ACCEPT" || kind == "REJECT") {
      if (l.tokens.size() != 2) fail(l, 0, "expected '" + std::string(kind) + " q'");
      std::string q(l.tokens[1].text);
      if (kind == "START") {
        if (haveStart) fail(l, 0, "duplicate START");
        tm.start = q;
        haveStart = true;
      } else if (kind == "ACCEPT") {
        tm.accept.insert(q);
      } else {
        tm.reject.insert(q);
      }
    } else if (kind == "D") {
      if (l.tokens.size() != 6) fail(l, 0, "expected 'D q a q' a' L|R'");
      std::string q(l.tokens[1].text);
      TapeSymbol a = symbol(l, 2);
      Transition t{std::string(l.tokens[3].text), symbol(l, 4), HeadMove::Right};
      std::string_view m = l.tokens[5].text;
      if (m == "L")
        t.move = HeadMove::Left;
      else if (m != "R")
        fail(l, 5, "expected L or R");
      if (tm.delta.count({q, a})) fail(l, 1, "duplicate transition");
      tm.delta[{q, a}] = t;
    } else {
      fail(l, 0, "unknown record '" + std::string(kind) + "'");
    }
  }
  if (!haveStart) throw ParseError(lines.empty() ? 1 : lines.back().number, 1, "missing START");
  return tm;
}

// ---------------------------------------------------------------------------
// Traces
// ---------------------------------------------------------------------------

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string formatTraceHeader(const TraceHeader& h) {
  std::ostringstream os;
  os << "# nubot-trace v1 seed=" << h.seed << " agitation=" << (h.agitation ? 1 : 0) << " rng=" << h.rng
     << " rules=" << h.rulesHash << " config=" << h.configHash;
  return os.str();
}

std::string formatTraceRecord(const TraceRecord& r) {
  char t[40];
  std::snprintf(t, sizeof t, "%.17g", r.time);
  const Event& e = r.event;
  std::string out = "t=";
  out += t;
  switch (e.kind) {
    case EventKind::NonMovement: out += " kind=nonmove rule=" + std::to_string(e.rule); break;
    case EventKind::Movement: out += " kind=move rule=" + std::to_string(e.rule); break;
    case EventKind::Agitation: out += " kind=agit rule=-"; break;
  }
  out += " p1=" + toString(e.p1) + " p2=" + toString(e.p2) + " arm=";
  out += e.arm == Arm::None ? "-" : (e.arm == Arm::S1 ? "1" : "2");
  return out;
}

Trace parseTrace(std::string_view text) {
  auto lines = tokenize(text, false);
  Trace tr;
  bool haveHeader = false;
  auto point = [](std::string_view v, const Line& l, std::size_t tok) {
    auto comma = v.find(',');
    if (comma == std::string_view::npos) fail(l, tok, "expected x,y");
    auto coord = [&](std::string_view t) {
      std::int32_t out = 0;
      auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
      if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) fail(l, tok, "expected x,y");
      return out;
    };
    return GridPoint{coord(v.substr(0, comma)), coord(v.substr(comma + 1))};
  };
  for (const Line& l : lines) {
    if (l.tokens.empty()) continue;
    if (l.tokens[0].text == "#") {
      if (l.tokens.size() < 3 || l.tokens[1].text != "nubot-trace" || l.tokens[2].text != "v1") continue;
      if (haveHeader) fail(l, 0, "duplicate trace header");
      haveHeader = true;
      for (std::size_t k = 3; k < l.tokens.size(); ++k) {
        std::string_view kv = l.tokens[k].text;
        auto eq = kv.find('=');
        if (eq == std::string_view::npos) fail(l, k, "expected key=value");
        std::string_view key = kv.substr(0, eq), val = kv.substr(eq + 1);
        if (key == "seed")
          tr.header.seed = parseU64(val, l, k);
        else if (key == "agitation")
          tr.header.agitation = val == "1";
        else if (key == "rng")
          tr.header.rng = std::string(val);
        else if (key == "rules")
          tr.header.rulesHash = std::string(val);
        else if (key == "config")
          tr.header.configHash = std::string(val);
        else
          fail(l, k, "unknown header key '" + std::string(key) + "'");
      }
      continue;
    }
    if (l.tokens[0].text.front() == '#') continue;
    if (l.tokens.size() != 6) fail(l, 0, "expected 't= kind= rule= p1= p2= arm='");
    static constexpr std::string_view keys[] = {"t=", "kind=", "rule=", "p1=", "p2=", "arm="};
    std::string_view vals[6];
    for (std::size_t k = 0; k < 6; ++k) {
      std::string_view tk = l.tokens[k].text;
      if (tk.substr(0, keys[k].size()) != keys[k]) fail(l, k, "expected '" + std::string(keys[k]) + "'");
      vals[k] = tk.substr(keys[k].size());
    }
    TraceRecord rec;
    rec.time = parseDouble(vals[0], l, 0);
    if (vals[1] == "nonmove")
      rec.event.kind = EventKind::NonMovement;
    else if (vals[1] == "move")
      rec.event.kind = EventKind::Movement;
    else if (vals[1] == "agit")
      rec.event.kind = EventKind::Agitation;
    else
      fail(l, 1, "unknown event kind");
    if (rec.event.kind != EventKind::Agitation)
      rec.event.rule = static_cast<std::uint32_t>(parseU64(vals[2], l, 2));
    else if (vals[2] != "-")
      fail(l, 2, "agitation carries no rule");
    rec.event.p1 = point(vals[3], l, 3);
    rec.event.p2 = point(vals[4], l, 4);
    if (vals[5] == "1")
      rec.event.arm = Arm::S1;
    else if (vals[5] == "2")
      rec.event.arm = Arm::S2;
    else if (vals[5] == "-")
      rec.event.arm = Arm::None;
    else
      fail(l, 5, "expected arm 1, 2 or -");
    auto d = directionBetween(rec.event.p1, rec.event.p2);
    if (!d) fail(l, 3, "p1 and p2 are not adjacent");
    if (rec.event.kind == EventKind::Agitation) rec.event.agitation = *d;
    tr.records.push_back(rec);
  }
  return tr;
}

Configuration replayTrace(const Configuration& initial, const RuleSet& rs, const Trace& trace, std::size_t upTo) {
  Configuration c = initial;
  std::size_t n = std::min(upTo, trace.records.size());
  for (std::size_t i = 0; i < n; ++i) applyEvent(c, rs, trace.records[i].event);
  return c;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace {

constexpr double kSqrt3Half = 0.86602540378443864676;

double projX(GridPoint p) { return p.x + 0.5 * p.y; }
double projY(GridPoint p) { return p.y * kSqrt3Half; }

std::string xmlEscape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string renderSvg(const Snapshot& s) {
  const Configuration& c = s.configuration;
  const double scale = 30.0, r = 0.45;
  double minX = 0, maxX = 0, minY = 0, maxY = 0;
  bool first = true;
  for (GridPoint p : c.positions()) {
    double X = projX(p), Y = projY(p);
    if (first) {
      minX = maxX = X;
      minY = maxY = Y;
      first = false;
    }
    minX = std::min(minX, X);
    maxX = std::max(maxX, X);
    minY = std::min(minY, Y);
    maxY = std::max(maxY, Y);
  }
  minX -= 1;
  minY -= 1;
  maxX += 1;
  maxY += 1;
  // SVG y grows downward; flip so +y points up.
  auto sx = [&](double X) { return (X - minX) * scale; };
  auto sy = [&](double Y) { return (maxY - Y) * scale; };
  std::set<GridPoint> mov(s.movable.begin(), s.movable.end());
  std::set<GridPoint> fr(s.frontier.begin(), s.frontier.end());
  std::set<GridPoint> bl(s.blocking.begin(), s.blocking.end());

  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (maxX - minX) * scale << "\" height=\""
     << (maxY - minY) * scale << "\">\n";
  os << "<style>.m{fill:#fff;stroke:#000}.movable{fill:#8f8}.frontier{stroke:#08f;stroke-width:3}"
        ".blocking{fill:#f88}.rigid{fill:#000}.flex{fill:#fff;stroke:#000}.link{stroke:#999}"
        "text{font:10px sans-serif;text-anchor:middle;dominant-baseline:central}</style>\n";
  if (s.time) os << "<title>t=" << *s.time << "</title>\n";
  auto ps = c.positions();
  for (GridPoint p : ps) {
    for (Direction d : kDirections) {
      GridPoint q = p + vec(d);
      if (!(p < q)) continue;
      BondType b = c.bond(p, d);
      if (b == BondType::Null) continue;
      os << "<line class=\"link\" x1=\"" << sx(projX(p)) << "\" y1=\"" << sy(projY(p)) << "\" x2=\""
         << sx(projX(q)) << "\" y2=\"" << sy(projY(q)) << "\"/>\n";
    }
  }
  for (GridPoint p : ps) {
    std::string cls = "m";
    if (mov.count(p)) cls += " movable";
    if (bl.count(p)) cls += " blocking";
    if (fr.count(p)) cls += " frontier";
    os << "<circle class=\"" << cls << "\" cx=\"" << sx(projX(p)) << "\" cy=\"" << sy(projY(p)) << "\" r=\""
       << r * scale << "\"/>\n";
    os << "<text x=\"" << sx(projX(p)) << "\" y=\"" << sy(projY(p)) << "\">" << xmlEscape(c.stateAt(p).name())
       << "</text>\n";
  }
  for (GridPoint p : ps) {
    for (Direction d : kDirections) {
      GridPoint q = p + vec(d);
      if (!(p < q)) continue;
      BondType b = c.bond(p, d);
      if (b == BondType::Null) continue;
      double mx = (projX(p) + projX(q)) / 2, my = (projY(p) + projY(q)) / 2;
      os << "<circle class=\"" << (b == BondType::Rigid ? "rigid" : "flex") << "\" cx=\"" << sx(mx)
         << "\" cy=\"" << sy(my) << "\" r=\"" << 0.08 * scale << "\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string renderAscii(const Snapshot& s) {
  const Configuration& c = s.configuration;
  if (c.empty()) return "\n";
  BoundingBox bb = c.boundingBox();
  std::set<GridPoint> mov(s.movable.begin(), s.movable.end());
  // Row y is indented by (y - minY); column of x is 2*(x - minX) + (y - minY).
  int width = 2 * (bb.max.x - bb.min.x) + (bb.max.y - bb.min.y) + 1;
  std::ostringstream os;
  for (int y = bb.max.y; y >= bb.min.y; --y) {
    std::string row(static_cast<std::size_t>(width), ' ');
    for (int x = bb.min.x; x <= bb.max.x; ++x) {
      GridPoint p{x, y};
      std::size_t col = static_cast<std::size_t>(2 * (x - bb.min.x) + (y - bb.min.y));
      if (!c.occupied(p))
        row[col] = '.';
      else if (mov.count(p))
        row[col] = '*';
      else
        row[col] = c.stateAt(p).name().front();
    }
    while (!row.empty() && row.back() == ' ') row.pop_back();
    os << row << '\n';
  }
  return os.str();
}

}  // namespace

std::string renderSnapshot(const Snapshot& s, RenderStyle style) {
  return style == RenderStyle::Svg ? renderSvg(s) : renderAscii(s);
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << contents;
}

}  // namespace nubot::io
