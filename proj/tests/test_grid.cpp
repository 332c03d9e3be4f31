#include <doctest.h>

#include <algorithm>
#include <map>
#include <queue>
#include <random>
#include <set>

#include "nubot/grid.hpp"

using namespace nubot;

namespace {

int bfsDistance(GridPoint a, GridPoint b) {
  std::map<GridPoint, int> dist{{a, 0}};
  std::queue<GridPoint> q;
  q.push(a);
  while (!q.empty()) {
    const GridPoint p = q.front();
    q.pop();
    if (p == b) return dist[p];
    for (GridPoint n : neighbors(p))
      if (!dist.count(n)) {
        dist[n] = dist[p] + 1;
        q.push(n);
      }
  }
  return -1;
}

}  // namespace

TEST_SUITE("grid") {
  TEST_CASE("neighbours of the origin") {
    const auto ns = neighbors({0, 0});
    const std::set<GridPoint> got(ns.begin(), ns.end());
    const std::set<GridPoint> want{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {-1, 1}, {1, -1}};
    CHECK(got == want);
  }

  TEST_CASE("neighbours translate") {
    const auto o = neighbors({0, 0});
    const auto p = neighbors({2, -1});
    for (std::size_t i = 0; i < 6; ++i) CHECK(p[i] == o[i] + GridPoint{2, -1});
  }

  TEST_CASE("six distinct neighbours, never the point itself") {
    std::mt19937 g(3);
    std::uniform_int_distribution<int> d(-50, 50);
    for (int t = 0; t < 100; ++t) {
      const GridPoint p{d(g), d(g)};
      const auto ns = neighbors(p);
      const std::set<GridPoint> s(ns.begin(), ns.end());
      CHECK(s.size() == 6);
      CHECK(!s.count(p));
      for (GridPoint q : s) CHECK(hexDistance(p, q) == 1);
    }
  }

  TEST_CASE("directionBetween") {
    CHECK(directionBetween({0, 0}, {-1, 1}) == Direction::PlusW);
    CHECK(!directionBetween({0, 0}, {2, 0}));
    CHECK(directionBetween({1, 1}, {1, 0}) == Direction::MinusY);
    CHECK(!directionBetween({0, 0}, {0, 0}));
  }

  TEST_CASE("hex distance examples") {
    CHECK(hexDistance(GridPoint{1, 0}, GridPoint{0, 1}) == 1);
    CHECK(hexDistance(GridPoint{1, 0}, GridPoint{-1, 0}) == 2);
    CHECK(hexDistance(GridPoint{0, 0}, GridPoint{1, 1}) == 2);
  }

  TEST_CASE("hex distance equals BFS path length") {
    std::mt19937 g(11);
    std::uniform_int_distribution<int> d(-6, 6);
    for (int t = 0; t < 100; ++t) {
      const GridPoint a{d(g), d(g)}, b{d(g), d(g)};
      CHECK(hexDistance(a, b) == bfsDistance(a, b));
    }
  }

  TEST_CASE("hex distance is a metric") {
    std::mt19937 g(5);
    std::uniform_int_distribution<int> d(-20, 20);
    for (int t = 0; t < 200; ++t) {
      const GridPoint a{d(g), d(g)}, b{d(g), d(g)}, c{d(g), d(g)};
      CHECK(hexDistance(a, a) == 0);
      CHECK((hexDistance(a, b) == 0) == (a == b));
      CHECK(hexDistance(a, b) == hexDistance(b, a));
      CHECK(hexDistance(a, c) <= hexDistance(a, b) + hexDistance(b, c));
    }
  }

  TEST_CASE("directions: closed under negation, exactly two at distance one") {
    for (Direction u : kDirections) {
      CHECK(vec(opposite(u)) == -vec(u));
      CHECK(hexDistance(vec(u), GridPoint{0, 0}) == 1);
      int close = 0;
      for (Direction w : kDirections) close += hexDistance(u, w) == 1;
      CHECK(close == 2);
      CHECK(hexDistance(u, rotateCcw(u)) == 1);
      CHECK(hexDistance(u, rotateCw(u)) == 1);
    }
    CHECK(vec(Direction::PlusW) == GridPoint{-1, 1});
  }

  TEST_CASE("direction tokens round-trip") {
    for (Direction u : kDirections) CHECK(parseDirection(toString(u)) == u);
    CHECK(!parseDirection("+z"));
    CHECK(!parseDirection(""));
  }
}
