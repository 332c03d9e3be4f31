#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "nubot/kinetics.hpp"
#include "nubot/model.hpp"

using namespace nubot;

namespace {

Configuration pair(BondType b) {
  Configuration c;
  c.place({0, 0}, StateId::of("a"));
  c.place({1, 0}, StateId::of("b"));
  if (b != BondType::Null) c.setBond({0, 0}, Direction::PlusX, b);
  return c;
}

Configuration randomConfig(std::mt19937_64& g, int count) {
  Configuration c;
  std::uniform_int_distribution<int> d(0, 6);
  while (static_cast<int>(c.size()) < count) {
    const GridPoint p{d(g), d(g)};
    if (!c.occupied(p)) c.place(p, StateId::of("s"));
  }
  std::uniform_int_distribution<int> bond(0, 2);
  for (GridPoint p : c.positions())
    for (Direction u : {Direction::PlusX, Direction::PlusY, Direction::PlusW})
      if (c.occupied(p + vec(u))) c.setBond(p, u, static_cast<BondType>(bond(g)));
  return c;
}

// Independent union-find over bond edges.
std::vector<std::vector<GridPoint>> unionFind(const Configuration& c) {
  const auto pos = c.positions();
  std::map<GridPoint, std::size_t> id;
  for (std::size_t i = 0; i < pos.size(); ++i) id[pos[i]] = i;
  std::vector<std::size_t> parent(pos.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (GridPoint p : pos)
    for (Direction u : kDirections)
      if (c.occupied(p + vec(u)) && c.bond(p, u) != BondType::Null) parent[find(id[p])] = find(id[p + vec(u)]);
  std::map<std::size_t, std::vector<GridPoint>> groups;
  for (GridPoint p : pos) groups[find(id[p])].push_back(p);
  std::vector<std::vector<GridPoint>> out;
  for (auto& [k, g] : groups) out.push_back(g);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("state interning") {
    CHECK(StateId::of("x") == StateId::of("x"));
    CHECK(StateId::of("x") != StateId::of("y"));
    CHECK(!StateId::of("x").isEmpty());
    CHECK(kEmpty.isEmpty());
    CHECK(StateId::of("abc").name() == "abc");
  }

  TEST_CASE("bonds are stored on both endpoints") {
    const Configuration c = pair(BondType::Rigid);
    CHECK(c.bond({0, 0}, Direction::PlusX) == BondType::Rigid);
    CHECK(c.bond({1, 0}, Direction::MinusX) == BondType::Rigid);
    CHECK(c.bondCount() == 1);
  }

  TEST_CASE("removing a monomer drops its bonds") {
    Configuration c = pair(BondType::Flexible);
    c.place({0, 1}, StateId::of("c"));
    c.setBond({0, 0}, Direction::PlusY, BondType::Rigid);
    c.remove({0, 0});
    CHECK(c.size() == 2);
    CHECK(c.bondCount() == 0);
    CHECK(c.bond({1, 0}, Direction::MinusX) == BondType::Null);
  }

  TEST_CASE("components by bond paths") {
    CHECK(connectedComponents(pair(BondType::Null)).size() == 2);
    CHECK(connectedComponents(pair(BondType::Flexible)).size() == 1);
    CHECK(connectedComponents(pair(BondType::Rigid)).size() == 1);
  }

  TEST_CASE("components match a union-find oracle") {
    std::mt19937_64 g(17);
    for (int t = 0; t < 50; ++t) {
      const Configuration c = randomConfig(g, 20);
      CHECK(connectedComponents(c) == unionFind(c));
    }
  }

  TEST_CASE("stability examples") {
    Configuration one;
    one.place({3, 3}, StateId::of("a"));
    CHECK(isStable(one));
    CHECK(isStable(pair(BondType::Rigid)));
    CHECK(!isStable(pair(BondType::Null)));
  }

  TEST_CASE("canonical form") {
    Configuration c;
    c.place({5, 5}, StateId::of("a"));
    c.place({6, 5}, StateId::of("b"));
    c.setBond({5, 5}, Direction::PlusX, BondType::Rigid);
    const Configuration k = canonicalize(c);
    CHECK(k.stateAt({0, 0}) == StateId::of("a"));
    CHECK(k.stateAt({1, 0}) == StateId::of("b"));
    CHECK(k.bond({0, 0}, Direction::PlusX) == BondType::Rigid);
    CHECK(canonicalize(k) == k);
    for (Direction u : kDirections) CHECK(canonicalize(c.translated(vec(u))) == k);
  }

  TEST_CASE("components are invariant under canonicalisation") {
    std::mt19937_64 g(23);
    for (int t = 0; t < 20; ++t) {
      const Configuration c = randomConfig(g, 12);
      CHECK(connectedComponents(c).size() == connectedComponents(canonicalize(c)).size());
    }
  }

  TEST_CASE("agitating a stable configuration only translates it") {
    Configuration c;
    for (int i = 0; i < 4; ++i) c.place({i, 0}, StateId::of("0"));
    for (int i = 0; i < 3; ++i) c.setBond({i, 0}, Direction::PlusX, BondType::Rigid);
    c.place({1, 1}, StateId::of("1"));
    c.setBond({1, 0}, Direction::PlusY, BondType::Rigid);
    REQUIRE(isStable(c));
    for (GridPoint p : c.positions())
      for (Direction u : kDirections) {
        Configuration d = c;
        applyAgitation(d, p, u);
        CHECK(canonicalize(d) == canonicalize(c));
      }
  }

  TEST_CASE("translateSubset keeps bonds and rejects torn ones") {
    Configuration c = pair(BondType::Flexible);
    c.translateSubset({{1, 0}}, vec(Direction::PlusW));
    CHECK(c.occupied({0, 1}));
    CHECK(c.bond({0, 0}, Direction::PlusY) == BondType::Flexible);
    Configuration f = pair(BondType::Flexible);
    CHECK_THROWS(f.translateSubset({{1, 0}}, vec(Direction::PlusX)));
    Configuration r = pair(BondType::Rigid);
    CHECK_THROWS(r.translateSubset({{1, 0}}, vec(Direction::PlusW)));
  }

  TEST_CASE("bounding box") {
    Configuration c = pair(BondType::Null);
    c.place({-2, 4}, StateId::of("z"));
    const BoundingBox b = c.boundingBox();
    CHECK(b.min == GridPoint{-2, 0});
    CHECK(b.max == GridPoint{1, 4});
  }
}
