#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nubot/grid.hpp"

namespace nubot {

/// Interned monomer state. Value 0 is the reserved EMPTY token.
class StateId {
 public:
  constexpr StateId() = default;
  static StateId of(std::string_view name);
  static constexpr StateId empty() { return StateId{}; }

  constexpr bool isEmpty() const { return value_ == 0; }
  constexpr std::uint32_t value() const { return value_; }
  const std::string& name() const;

  constexpr bool operator==(const StateId&) const = default;
  constexpr auto operator<=>(const StateId&) const = default;

 private:
  constexpr explicit StateId(std::uint32_t v) : value_(v) {}
  std::uint32_t value_ = 0;
};

inline constexpr StateId kEmpty = StateId::empty();

enum class BondType : std::uint8_t { Null = 0, Flexible, Rigid };

std::string_view toString(BondType b);

struct Monomer {
  StateId state;
  GridPoint position;
  bool operator==(const Monomer&) const = default;
};

struct BoundingBox {
  GridPoint min;
  GridPoint max;
  bool operator==(const BoundingBox&) const = default;
};

/// The whole world state: a sparse map position -> state plus the bonds
/// between adjacent occupied positions. Bonds are stored on both endpoints.
class Configuration {
 public:
  struct Cell {
    StateId state;
    std::array<BondType, 6> bonds{};
    bool operator==(const Cell&) const = default;
  };

  Configuration() = default;

  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  bool occupied(GridPoint p) const { return cells_.count(p) != 0; }
  StateId stateAt(GridPoint p) const;
  BondType bond(GridPoint p, Direction d) const;
  const Cell* cell(GridPoint p) const;

  void place(GridPoint p, StateId s);
  void remove(GridPoint p);
  void setState(GridPoint p, StateId s);
  /// Sets the bond between p and p + vec(d); both must be occupied.
  void setBond(GridPoint p, Direction d, BondType b);

  /// Translates every monomer at `positions` by `v`, keeping their bonds.
  /// Bonds between a moved and an unmoved monomer that remain adjacent are
  /// re-oriented; rigid bonds across the cut or non-adjacent flexible bonds
  /// throw CollisionDetected.
  void translateSubset(const std::vector<GridPoint>& positions, GridPoint v);

  Configuration translated(GridPoint v) const;

  /// Occupied positions in lexicographic order.
  std::vector<GridPoint> positions() const;
  std::vector<Monomer> monomers() const;
  BoundingBox boundingBox() const;
  std::size_t bondCount() const;

  const std::unordered_map<GridPoint, Cell>& cells() const { return cells_; }

  bool operator==(const Configuration& o) const { return cells_ == o.cells_; }

 private:
  std::unordered_map<GridPoint, Cell> cells_;
};

/// Partition by flexible-or-rigid bond paths; each component sorted, the
/// list ordered by first element.
std::vector<std::vector<GridPoint>> connectedComponents(const Configuration& c);

bool isStable(const Configuration& c);

/// Translates c so its lexicographically minimal occupied point is the origin.
Configuration canonicalize(const Configuration& c);

}  // namespace nubot

template <>
struct std::hash<nubot::StateId> {
  std::size_t operator()(const nubot::StateId& s) const noexcept { return s.value(); }
};
