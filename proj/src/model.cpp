#include "nubot/model.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <mutex>
#include <numeric>
#include <shared_mutex>

#include "nubot/error.hpp"

namespace nubot {

namespace {

class StateTable {
 public:
  StateTable() { names_.emplace_back("-"); }

  std::uint32_t intern(std::string_view name) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    auto [it, inserted] = ids_.try_emplace(std::string(name), 0);
    if (inserted) {
      it->second = static_cast<std::uint32_t>(names_.size());
      names_.emplace_back(name);
    }
    return it->second;
  }

  const std::string& name(std::uint32_t id) {
    std::shared_lock lock(mutex_);
    return names_.at(id);
  }

 private:
  std::shared_mutex mutex_;
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::deque<std::string> names_;
};

StateTable& table() {
  static StateTable t;
  return t;
}

}  // namespace

StateId StateId::of(std::string_view name) {
  if (name.empty() || name == "-")
    throw Error(ErrorCode::InvalidState, "'-' and the empty string are reserved for EMPTY");
  for (char ch : name)
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '#')
      throw Error(ErrorCode::InvalidState, "state token contains whitespace or '#'");
  return StateId(table().intern(name));
}

const std::string& StateId::name() const { return table().name(value_); }

std::string_view toString(BondType b) {
  switch (b) {
    case BondType::Null: return "n";
    case BondType::Flexible: return "f";
    case BondType::Rigid: return "r";
  }
  return "?";
}

StateId Configuration::stateAt(GridPoint p) const {
  auto it = cells_.find(p);
  return it == cells_.end() ? kEmpty : it->second.state;
}

BondType Configuration::bond(GridPoint p, Direction d) const {
  auto it = cells_.find(p);
  return it == cells_.end() ? BondType::Null : it->second.bonds[index(d)];
}

const Configuration::Cell* Configuration::cell(GridPoint p) const {
  auto it = cells_.find(p);
  return it == cells_.end() ? nullptr : &it->second;
}

void Configuration::place(GridPoint p, StateId s) {
  if (s.isEmpty()) throw Error(ErrorCode::InvalidState, "cannot place EMPTY at " + toString(p));
  auto [it, inserted] = cells_.try_emplace(p, Cell{s, {}});
  if (!inserted) throw Error(ErrorCode::Occupied, toString(p));
}

void Configuration::remove(GridPoint p) {
  auto it = cells_.find(p);
  if (it == cells_.end()) throw Error(ErrorCode::MonomerNotFound, toString(p));
  for (Direction d : kDirections) {
    if (it->second.bonds[index(d)] == BondType::Null) continue;
    auto nb = cells_.find(p + vec(d));
    if (nb != cells_.end()) nb->second.bonds[index(opposite(d))] = BondType::Null;
  }
  cells_.erase(it);
}

void Configuration::setState(GridPoint p, StateId s) {
  if (s.isEmpty()) throw Error(ErrorCode::InvalidState, "use remove() to empty a site");
  auto it = cells_.find(p);
  if (it == cells_.end()) throw Error(ErrorCode::MonomerNotFound, toString(p));
  it->second.state = s;
}

void Configuration::setBond(GridPoint p, Direction d, BondType b) {
  auto a = cells_.find(p);
  auto c = cells_.find(p + vec(d));
  if (a == cells_.end() || c == cells_.end())
    throw Error(ErrorCode::MonomerNotFound, "bond endpoint missing at " + toString(p));
  a->second.bonds[index(d)] = b;
  c->second.bonds[index(opposite(d))] = b;
}

void Configuration::translateSubset(const std::vector<GridPoint>& positions, GridPoint v) {
  std::unordered_map<GridPoint, Cell> moved;
  moved.reserve(positions.size());
  for (GridPoint p : positions) {
    auto it = cells_.find(p);
    if (it == cells_.end()) throw Error(ErrorCode::MonomerNotFound, toString(p));
    moved.emplace(p, it->second);
  }
  // Detach bonds that cross the cut; they are re-attached after the move.
  struct CrossBond {
    GridPoint movedFrom;
    GridPoint stay;
    BondType type;
  };
  std::vector<CrossBond> cross;
  for (auto& [p, cell] : moved) {
    for (Direction d : kDirections) {
      const BondType b = cell.bonds[index(d)];
      if (b == BondType::Null) continue;
      const GridPoint q = p + vec(d);
      if (moved.count(q)) continue;
      cross.push_back({p, q, b});
      cell.bonds[index(d)] = BondType::Null;
      cells_.at(q).bonds[index(opposite(d))] = BondType::Null;
    }
  }
  for (auto& [p, cell] : moved) cells_.erase(p);
  for (auto& [p, cell] : moved) {
    auto [it, inserted] = cells_.try_emplace(p + v, cell);
    if (!inserted) throw Error(ErrorCode::CollisionDetected, "translation lands on " + toString(p + v));
  }
  for (const CrossBond& cb : cross) {
    if (cb.type == BondType::Rigid)
      throw Error(ErrorCode::CollisionDetected, "rigid bond cut at " + toString(cb.movedFrom));
    const GridPoint np = cb.movedFrom + v;
    auto d = directionBetween(np, cb.stay);
    if (!d) throw Error(ErrorCode::CollisionDetected, "flexible bond stretched at " + toString(np));
    setBond(np, *d, cb.type);
  }
}

Configuration Configuration::translated(GridPoint v) const {
  Configuration out;
  out.cells_.reserve(cells_.size());
  for (const auto& [p, cell] : cells_) out.cells_.emplace(p + v, cell);
  return out;
}

std::vector<GridPoint> Configuration::positions() const {
  std::vector<GridPoint> out;
  out.reserve(cells_.size());
  for (const auto& kv : cells_) out.push_back(kv.first);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Monomer> Configuration::monomers() const {
  std::vector<Monomer> out;
  for (GridPoint p : positions()) out.push_back({cells_.at(p).state, p});
  return out;
}

BoundingBox Configuration::boundingBox() const {
  BoundingBox box{{std::numeric_limits<int>::max(), std::numeric_limits<int>::max()},
                  {std::numeric_limits<int>::min(), std::numeric_limits<int>::min()}};
  if (cells_.empty()) return {{0, 0}, {0, 0}};
  for (const auto& kv : cells_) {
    box.min.x = std::min(box.min.x, kv.first.x);
    box.min.y = std::min(box.min.y, kv.first.y);
    box.max.x = std::max(box.max.x, kv.first.x);
    box.max.y = std::max(box.max.y, kv.first.y);
  }
  return box;
}

std::size_t Configuration::bondCount() const {
  std::size_t n = 0;
  for (const auto& kv : cells_)
    for (BondType b : kv.second.bonds) n += b != BondType::Null;
  return n / 2;
}

std::vector<std::vector<GridPoint>> connectedComponents(const Configuration& c) {
  std::vector<std::vector<GridPoint>> out;
  std::unordered_map<GridPoint, bool> seen;
  for (GridPoint start : c.positions()) {
    if (seen[start]) continue;
    std::vector<GridPoint> comp{start};
    seen[start] = true;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      const auto* cell = c.cell(comp[i]);
      for (Direction d : kDirections) {
        if (cell->bonds[index(d)] == BondType::Null) continue;
        const GridPoint q = comp[i] + vec(d);
        if (!seen[q]) {
          seen[q] = true;
          comp.push_back(q);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

Configuration canonicalize(const Configuration& c) {
  if (c.empty()) return c;
  GridPoint lo = c.cells().begin()->first;
  for (const auto& kv : c.cells()) lo = std::min(lo, kv.first);
  return c.translated(-lo);
}

}  // namespace nubot
