#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace nubot {

/// A point of the triangular grid in axial coordinates. Only the x and y axes
/// carry coordinates; the third axis w is derived (w = y - x as vectors).
struct GridPoint {
  int x = 0;
  int y = 0;

  constexpr GridPoint operator+(GridPoint o) const { return {x + o.x, y + o.y}; }
  constexpr GridPoint operator-(GridPoint o) const { return {x - o.x, y - o.y}; }
  constexpr GridPoint operator-() const { return {-x, -y}; }
  constexpr GridPoint& operator+=(GridPoint o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr bool operator==(const GridPoint&) const = default;
  constexpr auto operator<=>(const GridPoint&) const = default;
};

/// The six axial directions. The enumerator order walks the ring
/// counter-clockwise, so adjacent enumerators (mod 6) are at hex distance 1.
enum class Direction : std::uint8_t { PlusX = 0, PlusY, PlusW, MinusX, MinusY, MinusW };

inline constexpr std::array<Direction, 6> kDirections = {
    Direction::PlusX,  Direction::PlusY,  Direction::PlusW,
    Direction::MinusX, Direction::MinusY, Direction::MinusW};

constexpr int index(Direction d) { return static_cast<int>(d); }

constexpr Direction directionFromIndex(int i) { return static_cast<Direction>(((i % 6) + 6) % 6); }

constexpr GridPoint vec(Direction d) {
  switch (d) {
    case Direction::PlusX: return {1, 0};
    case Direction::PlusY: return {0, 1};
    case Direction::PlusW: return {-1, 1};
    case Direction::MinusX: return {-1, 0};
    case Direction::MinusY: return {0, -1};
    case Direction::MinusW: return {1, -1};
  }
  return {0, 0};
}

constexpr Direction opposite(Direction d) { return directionFromIndex(index(d) + 3); }

/// Neighbouring directions on the ring: the two u' with hexDistance(u, u') = 1.
constexpr Direction rotateCcw(Direction d) { return directionFromIndex(index(d) + 1); }
constexpr Direction rotateCw(Direction d) { return directionFromIndex(index(d) + 5); }

constexpr int hexDistance(GridPoint a, GridPoint b) {
  const int dx = a.x - b.x;
  const int dy = a.y - b.y;
  const int adx = dx < 0 ? -dx : dx;
  const int ady = dy < 0 ? -dy : dy;
  const int ads = dx + dy < 0 ? -(dx + dy) : dx + dy;
  return (adx + ady + ads) / 2;
}

constexpr int hexDistance(Direction a, Direction b) { return hexDistance(vec(a), vec(b)); }

std::array<GridPoint, 6> neighbors(GridPoint p);

std::optional<Direction> directionBetween(GridPoint p, GridPoint q);

std::string_view toString(Direction d);
std::optional<Direction> parseDirection(std::string_view token);

std::string toString(GridPoint p);

}  // namespace nubot

template <>
struct std::hash<nubot::GridPoint> {
  std::size_t operator()(const nubot::GridPoint& p) const noexcept {
    auto h = static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.x)) << 32 |
             static_cast<std::uint32_t>(p.y);
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    return static_cast<std::size_t>(h);
  }
};
