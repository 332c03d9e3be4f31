#include <doctest.h>

#include <random>

#include "nubot/error.hpp"
#include "nubot/io.hpp"
#include "nubot/programs.hpp"

using namespace nubot;

namespace {

Configuration bigConfig(int n) {
  std::mt19937_64 g(8);
  Configuration c;
  std::uniform_int_distribution<int> d(-60, 60);
  const char* names[] = {"a", "b", "c0", "L3", "q.x"};
  while (static_cast<int>(c.size()) < n) {
    const GridPoint p{d(g), d(g)};
    if (!c.occupied(p)) c.place(p, StateId::of(names[g() % 5]));
  }
  for (GridPoint p : c.positions())
    for (Direction u : {Direction::PlusX, Direction::PlusY, Direction::PlusW})
      if (c.occupied(p + vec(u)) && g() % 2) c.setBond(p, u, g() % 2 ? BondType::Rigid : BondType::Flexible);
  return c;
}

const char* kSeedLine =
    "nubot-rules v1\n"
    "3 - n +x -> 0 2 r +x\n"
    "2 - n +x -> 0 1 r +x\n"
    "1 - n +x -> 0 0 r +x\n";

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("rule file round-trips byte for byte") {
    const RuleSet rs = io::parseRules(kSeedLine);
    CHECK(rs.size() == 3);
    CHECK(io::serializeRules(rs) == kSeedLine);
    CHECK(io::serializeRules(io::parseRules(io::serializeRules(rs))) == kSeedLine);
  }

  TEST_CASE("comments, labels and blank lines") {
    const RuleSet rs = io::parseRules("nubot-rules v1\n# header comment\n\na b n +x -> c d r +x # grow\n");
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].label == "grow");
    CHECK(io::parseRules(io::serializeRules(rs)).rules() == rs.rules());
  }

  TEST_CASE("bad direction is reported at its position") {
    try {
      io::parseRules("nubot-rules v1\na b n +z -> c d n +x\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() == 7);
    }
  }

  TEST_CASE("invalid rules fail at parse time") {
    CHECK_THROWS_AS(io::parseRules("nubot-rules v1\n- - n +x -> a a n +x\n"), ParseError);
    CHECK_THROWS_AS(io::parseRules("nubot-rules v1\na b n +x -> a b n -x\n"), ParseError);
    CHECK_THROWS_AS(io::parseRules("wrong header\n"), ParseError);
  }

  TEST_CASE("large configuration round-trip") {
    const Configuration c = bigConfig(10000);
    const std::string text = io::serializeConfiguration(c);
    const Configuration back = io::parseConfiguration(text);
    CHECK(back == c);
    CHECK(canonicalize(back) == canonicalize(c));
    CHECK(io::serializeConfiguration(back) == text);
  }

  TEST_CASE("configuration parse errors") {
    CHECK_THROWS_AS(io::parseConfiguration("nubot-config v1\nM 0 0 a\nM 0 0 b\n"), ParseError);
    CHECK_THROWS_AS(io::parseConfiguration("nubot-config v1\nM 0 0 a\nB 0 0 2 0 r\n"), ParseError);
    CHECK_THROWS_AS(io::parseConfiguration("nubot-config v1\nM 0 0 a\nM 1 0 b\nB 0 0 1 0 q\n"), ParseError);
  }

  TEST_CASE("machine files round-trip") {
    for (const TMSpec& tm : {tm_library::bitFlipper(), tm_library::lookupTable(2, {0, 3}),
                             tm_library::checkerboard(4, 2)}) {
      const std::string text = io::serializeTM(tm);
      CHECK(io::parseTM(text) == tm);
      CHECK(io::serializeTM(io::parseTM(text)) == text);
    }
    CHECK_THROWS_AS(io::parseTM("tm v1\nSTART q\nD q 7 q 0 R\n"), ParseError);
  }

  TEST_CASE("trace round-trip and replay") {
    const auto p = programs::genFastLine(8);
    const Trajectory t = run(p.initial, p.rules, 12);
    io::TraceHeader h;
    h.seed = 12;
    h.rulesHash = io::hex64(io::fnv1a(io::serializeRules(p.rules)));
    h.configHash = io::hex64(io::fnv1a(io::serializeConfiguration(p.initial)));
    std::string text = io::formatTraceHeader(h) + "\n";
    for (const auto& r : t.records) text += io::formatTraceRecord(io::TraceRecord{r.time, r.event}) + "\n";
    const io::Trace tr = io::parseTrace(text);
    CHECK(tr.header == h);
    REQUIRE(tr.records.size() == t.records.size());
    for (std::size_t i = 0; i < tr.records.size(); ++i) {
      CHECK(tr.records[i].time == t.records[i].time);
      CHECK(tr.records[i].event == t.records[i].event);
    }
    CHECK(io::replayTrace(p.initial, p.rules, tr) == t.final);
    CHECK(io::replayTrace(p.initial, p.rules, tr, 0) == p.initial);
  }

  TEST_CASE("svg rendering") {
    Configuration one;
    one.place({0, 0}, StateId::of("a"));
    const std::string s = io::renderSnapshot({one, {}, {}, {}, {}}, io::RenderStyle::Svg);
    CHECK(s.find("<svg") != std::string::npos);
    CHECK(s.find(">a<") != std::string::npos);

    Configuration pair = one;
    pair.place({1, 0}, StateId::of("b"));
    pair.setBond({0, 0}, Direction::PlusX, BondType::Rigid);
    const std::string r = io::renderSnapshot({pair, {}, {}, {}, {}}, io::RenderStyle::Svg);
    CHECK(r.find("rigid") != std::string::npos);
    CHECK(r == io::renderSnapshot({pair, {}, {}, {}, {}}, io::RenderStyle::Svg));

    const std::string m = io::renderSnapshot({pair, {{0, 0}}, {}, {}, {}}, io::RenderStyle::Svg);
    CHECK(m.find("movable") != std::string::npos);
  }

  TEST_CASE("ascii rendering") {
    Configuration c;
    c.place({0, 0}, StateId::of("a"));
    c.place({0, 1}, StateId::of("b"));
    const std::string s = io::renderSnapshot({c, {{0, 1}}, {}, {}, {}}, io::RenderStyle::Ascii);
    CHECK(s.find('*') != std::string::npos);
    CHECK(s.find('a') != std::string::npos);
    CHECK(s.find('*') < s.find('a'));
  }
}
