#include "nubot/grid.hpp"

namespace nubot {

std::array<GridPoint, 6> neighbors(GridPoint p) {
  std::array<GridPoint, 6> out{};
  for (Direction d : kDirections) out[index(d)] = p + vec(d);
  return out;
}

std::optional<Direction> directionBetween(GridPoint p, GridPoint q) {
  const GridPoint delta = q - p;
  for (Direction d : kDirections)
    if (vec(d) == delta) return d;
  return std::nullopt;
}

std::string_view toString(Direction d) {
  switch (d) {
    case Direction::PlusX: return "+x";
    case Direction::PlusY: return "+y";
    case Direction::PlusW: return "+w";
    case Direction::MinusX: return "-x";
    case Direction::MinusY: return "-y";
    case Direction::MinusW: return "-w";
  }
  return "?";
}

std::optional<Direction> parseDirection(std::string_view token) {
  for (Direction d : kDirections)
    if (toString(d) == token) return d;
  return std::nullopt;
}

std::string toString(GridPoint p) { return std::to_string(p.x) + "," + std::to_string(p.y); }

}  // namespace nubot
