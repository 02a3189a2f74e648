#ifndef GPDALG_GROUPOID_ISO_HPP
#define GPDALG_GROUPOID_ISO_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "gpdalg/groupoid.hpp"

namespace gpdalg {

/// Outcome of an exact isomorphism search. BudgetExceeded is reported
/// distinctly from NotIsomorphic.
struct IsoResult {
  enum Status { Found, NotIsomorphic, BudgetExceeded } status = NotIsomorphic;
  std::vector<int> map;  // arrow bijection g -> h when status == Found
};

namespace detail {

struct IsoSearch {
  const Groupoid& g;
  const Groupoid& h;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::vector<int> map;        // g arrow -> h arrow, -1 unassigned
  std::vector<bool> used;      // h arrows already hit
  std::vector<int> order;      // assignment order: units first
  bool exceeded = false;

  IsoSearch(const Groupoid& g_, const Groupoid& h_, std::uint64_t budget_)
      : g(g_), h(h_), budget(budget_) {}

  bool compatible(int x, int hx) const {
    if (g.is_unit(x) != h.is_unit(hx)) return false;
    if (g.source_fiber(g.source(x)).size() != h.source_fiber(h.source(hx)).size())
      return false;
    if (g.range_fiber(g.range(x)).size() != h.range_fiber(h.range(hx)).size())
      return false;
    int ms = map[g.source(x)], mr = map[g.range(x)];
    if (ms >= 0 && ms != h.source(hx)) return false;
    if (mr >= 0 && mr != h.range(hx)) return false;
    // composition consistency against everything already assigned
    for (int y : order) {
      int hy = map[y];
      if (hy < 0) continue;
      if (g.composable(x, y) != h.composable(hx, hy)) return false;
      if (g.composable(y, x) != h.composable(hy, hx)) return false;
      if (g.composable(x, y)) {
        int img = map[g.compose(x, y)];
        if (img >= 0 && img != h.compose(hx, hy)) return false;
      }
      if (g.composable(y, x)) {
        int img = map[g.compose(y, x)];
        if (img >= 0 && img != h.compose(hy, hx)) return false;
      }
    }
    int mi = map[g.inv(x)];
    if (mi >= 0 && mi != h.inv(hx)) return false;
    return true;
  }

  bool rec(std::size_t pos) {
    if (++nodes > budget) {
      exceeded = true;
      return false;
    }
    if (pos == order.size()) return true;
    int x = order[pos];
    for (int hx = 0; hx < h.num_arrows(); ++hx) {
      if (used[hx] || !compatible(x, hx)) continue;
      map[x] = hx;
      used[hx] = true;
      if (rec(pos + 1)) return true;
      if (exceeded) return false;
      map[x] = -1;
      used[hx] = false;
    }
    return false;
  }
};

}  // namespace detail

/// Exact backtracking search for a bijective homomorphism g -> h, with
/// unit-degree pruning. Exact for instance sizes within the node budget.
inline IsoResult groupoid_isomorphic(const Groupoid& g, const Groupoid& h,
                                     std::uint64_t budget = (1ull << 26)) {
  IsoResult out;
  if (g.num_arrows() != h.num_arrows() || g.num_units() != h.num_units()) {
    out.status = IsoResult::NotIsomorphic;
    return out;
  }
  // degree multisets must match
  auto degrees = [](const Groupoid& k) {
    std::vector<std::pair<int, int>> d;
    for (int u : k.units())
      d.emplace_back(static_cast<int>(k.source_fiber(u).size()),
                     static_cast<int>(k.range_fiber(u).size()));
    std::sort(d.begin(), d.end());
    return d;
  };
  if (degrees(g) != degrees(h)) {
    out.status = IsoResult::NotIsomorphic;
    return out;
  }

  detail::IsoSearch s(g, h, budget);
  s.map.assign(g.num_arrows(), -1);
  s.used.assign(h.num_arrows(), false);
  for (int u : g.units()) s.order.push_back(u);
  for (int x = 0; x < g.num_arrows(); ++x)
    if (!g.is_unit(x)) s.order.push_back(x);

  // order is rebuilt incrementally inside compatible(); the prefix of
  // `order` up to the current position is exactly the assigned set
  if (s.rec(0)) {
    out.status = IsoResult::Found;
    out.map = s.map;
  } else {
    out.status = s.exceeded ? IsoResult::BudgetExceeded : IsoResult::NotIsomorphic;
  }
  return out;
}

/// Checks that `map` is a unit-, source-, range- and composition-preserving
/// bijection g -> h. Used to audit found witnesses.
inline bool verify_isomorphism(const Groupoid& g, const Groupoid& h,
                               const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != g.num_arrows() ||
      g.num_arrows() != h.num_arrows())
    return false;
  std::vector<bool> hit(h.num_arrows(), false);
  for (int x = 0; x < g.num_arrows(); ++x) {
    if (map[x] < 0 || map[x] >= h.num_arrows() || hit[map[x]]) return false;
    hit[map[x]] = true;
  }
  for (int x = 0; x < g.num_arrows(); ++x) {
    if (g.is_unit(x) != h.is_unit(map[x])) return false;
    if (map[g.source(x)] != h.source(map[x])) return false;
    if (map[g.range(x)] != h.range(map[x])) return false;
    if (map[g.inv(x)] != h.inv(map[x])) return false;
    for (int y = 0; y < g.num_arrows(); ++y) {
      if (g.composable(x, y) != h.composable(map[x], map[y])) return false;
      if (g.composable(x, y) && map[g.compose(x, y)] != h.compose(map[x], map[y]))
        return false;
    }
  }
  return true;
}

}  // namespace gpdalg

#endif  // GPDALG_GROUPOID_ISO_HPP
