#ifndef GPDALG_GROUPOID_HPP
#define GPDALG_GROUPOID_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpdalg {

/// One named violation of the groupoid axioms. Violations are data, not
/// exceptions: validate() collects all of them.
struct Violation {
  std::string axiom;
  std::string detail;
};

/// A finite groupoid over arrow ids 0..n-1. All maps are dense tables;
/// compose(x,y) is defined exactly when source(x) == range(y).
///
/// Instances are immutable after construction. Downstream code assumes a
/// groupoid passed to it is valid (validate() returned empty).
class Groupoid {
public:
  Groupoid(std::vector<std::string> arrow_names,
           std::vector<int> units,
           std::vector<int> source,
           std::vector<int> range,
           std::vector<int> compose_table,  // n*n, -1 where undefined
           std::vector<int> inv)
      : names_(std::move(arrow_names)),
        units_(std::move(units)),
        src_(std::move(source)),
        rng_(std::move(range)),
        comp_(std::move(compose_table)),
        inv_(std::move(inv)) {
    const std::size_t n = names_.size();
    if (src_.size() != n || rng_.size() != n || inv_.size() != n ||
        comp_.size() != n * n)
      throw std::invalid_argument("Groupoid: table sizes do not match arrow count");
    is_unit_.assign(n, false);
    for (int u : units_) {
      if (u < 0 || static_cast<std::size_t>(u) >= n)
        throw std::invalid_argument("Groupoid: unit id out of range");
      is_unit_[u] = true;
    }
    std::sort(units_.begin(), units_.end());
    source_fibers_.assign(n, {});
    range_fibers_.assign(n, {});
    for (std::size_t x = 0; x < n; ++x) {
      source_fibers_[src_[x]].push_back(static_cast<int>(x));
      range_fibers_[rng_[x]].push_back(static_cast<int>(x));
    }
  }

  int num_arrows() const { return static_cast<int>(names_.size()); }
  int num_units() const { return static_cast<int>(units_.size()); }
  const std::vector<std::string>& arrow_names() const { return names_; }
  const std::string& name(int x) const { return names_[x]; }
  const std::vector<int>& units() const { return units_; }
  bool is_unit(int x) const { return is_unit_[x]; }

  int source(int x) const { return src_[x]; }
  int range(int x) const { return rng_[x]; }
  int inv(int x) const { return inv_[x]; }

  /// compose(x, y) = xy when source(x) == range(y), otherwise -1.
  int compose(int x, int y) const {
    return comp_[static_cast<std::size_t>(x) * names_.size() + y];
  }
  bool composable(int x, int y) const { return src_[x] == rng_[y]; }

  /// G_u = { x : s(x) = u }
  const std::vector<int>& source_fiber(int u) const { return source_fibers_[u]; }
  /// G^u = { x : r(x) = u }
  const std::vector<int>& range_fiber(int u) const { return range_fibers_[u]; }

  /// Index of a unit within units() ordering, -1 if not a unit.
  int unit_index(int u) const {
    auto it = std::lower_bound(units_.begin(), units_.end(), u);
    if (it == units_.end() || *it != u) return -1;
    return static_cast<int>(it - units_.begin());
  }

  /// Checks every groupoid axiom and returns the list of violations.
  std::vector<Violation> validate() const {
    std::vector<Violation> out;
    const int n = num_arrows();
    auto bad = [&](const std::string& axiom, const std::string& detail) {
      out.push_back({axiom, detail});
    };
    for (int u : units_) {
      if (src_[u] != u || rng_[u] != u)
        bad("unit-fixed", "source/range of unit " + names_[u] + " is not itself");
    }
    for (int x = 0; x < n; ++x) {
      if (!is_unit_[src_[x]])
        bad("source-into-units", "source(" + names_[x] + ") is not a unit");
      if (!is_unit_[rng_[x]])
        bad("range-into-units", "range(" + names_[x] + ") is not a unit");
      int xi = inv_[x];
      if (xi < 0 || xi >= n) {
        bad("inv-range", "inv(" + names_[x] + ") out of range");
        continue;
      }
      if (inv_[xi] != x)
        bad("inv-involution", "inv(inv(" + names_[x] + ")) != " + names_[x]);
      if (src_[xi] != rng_[x] || rng_[xi] != src_[x])
        bad("inv-swaps-source-range", "inv(" + names_[x] + ") has wrong source/range");
      if (composable(x, xi)) {
        if (compose(x, xi) != rng_[x])
          bad("x-invx-range", names_[x] + " * inv != range(" + names_[x] + ")");
      } else {
        bad("x-invx-range", names_[x] + " not composable with its inverse");
      }
      if (composable(xi, x)) {
        if (compose(xi, x) != src_[x])
          bad("invx-x-source", "inv * " + names_[x] + " != source(" + names_[x] + ")");
      } else {
        bad("invx-x-source", "inv not composable with " + names_[x]);
      }
    }
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        int xy = compose(x, y);
        if (composable(x, y)) {
          if (xy < 0 || xy >= n) {
            bad("compose-total", names_[x] + "*" + names_[y] + " undefined though composable");
            continue;
          }
          if (src_[xy] != src_[y] || rng_[xy] != rng_[x])
            bad("compose-source-range", names_[x] + "*" + names_[y] + " has wrong source/range");
        } else if (xy != -1) {
          bad("compose-partiality", names_[x] + "*" + names_[y] + " defined but not composable");
        }
      }
    // associativity over composable triples
    for (int x = 0; x < n && out.empty(); ++x)
      for (int y = 0; y < n; ++y) {
        if (!composable(x, y)) continue;
        for (int z = 0; z < n; ++z) {
          if (!composable(y, z)) continue;
          int l = compose(compose(x, y), z);
          int r = compose(x, compose(y, z));
          if (l != r)
            bad("associativity",
                "(" + names_[x] + names_[y] + ")" + names_[z] + " != " +
                    names_[x] + "(" + names_[y] + names_[z] + ")");
        }
      }
    return out;
  }

private:
  std::vector<std::string> names_;
  std::vector<int> units_;
  std::vector<int> src_, rng_;
  std::vector<int> comp_;
  std::vector<int> inv_;
  std::vector<bool> is_unit_;
  std::vector<std::vector<int>> source_fibers_, range_fibers_;
};

namespace detail {

/// Derives the inverse table from the composition table: inv(x) is the
/// unique y with xy = range(x) and yx = source(x).
inline std::vector<int> derive_inverses(int n,
                                        const std::vector<int>& src,
                                        const std::vector<int>& rng,
                                        const std::vector<int>& comp) {
  std::vector<int> inv(n, -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (comp[static_cast<std::size_t>(x) * n + y] == rng[x] &&
          comp[static_cast<std::size_t>(y) * n + x] == src[x]) {
        if (inv[x] != -1)
          throw std::invalid_argument("derive_inverses: inverse not unique for arrow " +
                                      std::to_string(x));
        inv[x] = y;
      }
    }
    if (inv[x] == -1)
      throw std::invalid_argument("derive_inverses: no inverse for arrow " +
                                  std::to_string(x));
  }
  return inv;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Built-in constructors
// ---------------------------------------------------------------------------

/// Cyclic group Z_n as a one-unit groupoid; arrow k is the residue k.
inline Groupoid group_cyclic(int n) {
  if (n < 1) throw std::invalid_argument("group_cyclic: n must be >= 1");
  std::vector<std::string> names;
  for (int k = 0; k < n; ++k) names.push_back("g" + std::to_string(k));
  std::vector<int> src(n, 0), rng(n, 0), comp(static_cast<std::size_t>(n) * n);
  std::vector<int> inv(n);
  for (int a = 0; a < n; ++a) {
    inv[a] = (n - a) % n;
    for (int b = 0; b < n; ++b) comp[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  }
  return Groupoid(std::move(names), {0}, std::move(src), std::move(rng),
                  std::move(comp), std::move(inv));
}

/// Klein four-group Z_2 (+) Z_2 as a one-unit groupoid.
inline Groupoid group_klein() {
  std::vector<std::string> names = {"e", "a", "b", "ab"};
  std::vector<int> src(4, 0), rng(4, 0), comp(16), inv = {0, 1, 2, 3};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) comp[static_cast<std::size_t>(a) * 4 + b] = a ^ b;
  return Groupoid(std::move(names), {0}, std::move(src), std::move(rng),
                  std::move(comp), std::move(inv));
}

/// Symmetric group S_3 as a one-unit groupoid (permutations of {0,1,2}).
inline Groupoid group_sym3() {
  // permutations listed as images of (0,1,2)
  static const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                  {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  auto find = [&](const int p[3]) {
    for (int i = 0; i < 6; ++i)
      if (perms[i][0] == p[0] && perms[i][1] == p[1] && perms[i][2] == p[2]) return i;
    return -1;
  };
  std::vector<std::string> names = {"e", "c", "c2", "t01", "t12", "t02"};
  std::vector<int> src(6, 0), rng(6, 0), comp(36), inv(6);
  for (int a = 0; a < 6; ++a) {
    int pi[3];
    for (int k = 0; k < 3; ++k) pi[perms[a][k]] = k;
    inv[a] = find(pi);
    for (int b = 0; b < 6; ++b) {
      int ab[3];
      for (int k = 0; k < 3; ++k) ab[k] = perms[a][perms[b][k]];
      comp[static_cast<std::size_t>(a) * 6 + b] = find(ab);
    }
  }
  return Groupoid(std::move(names), {0}, std::move(src), std::move(rng),
                  std::move(comp), std::move(inv));
}

/// Pair groupoid on n points: arrows (i,j), (i,j)(j,k) = (i,k), units (i,i).
inline Groupoid pair_groupoid(int n) {
  if (n < 1) throw std::invalid_argument("pair_groupoid: n must be >= 1");
  auto id = [n](int i, int j) { return i * n + j; };
  std::vector<std::string> names;
  std::vector<int> units, src, rng;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      names.push_back("(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      src.push_back(id(j, j));
      rng.push_back(id(i, i));
      if (i == j) units.push_back(id(i, i));
    }
  const int m = n * n;
  std::vector<int> comp(static_cast<std::size_t>(m) * m, -1), inv(m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      inv[id(i, j)] = id(j, i);
      for (int k = 0; k < n; ++k)
        comp[static_cast<std::size_t>(id(i, j)) * m + id(j, k)] = id(i, k);
    }
  return Groupoid(std::move(names), std::move(units), std::move(src),
                  std::move(rng), std::move(comp), std::move(inv));
}

/// Disjoint union: arrows of g then arrows of h, no cross composition.
inline Groupoid disjoint_union(const Groupoid& g, const Groupoid& h) {
  const int n1 = g.num_arrows(), n2 = h.num_arrows(), n = n1 + n2;
  std::vector<std::string> names;
  std::vector<int> units, src(n), rng(n), inv(n);
  std::vector<int> comp(static_cast<std::size_t>(n) * n, -1);
  for (int x = 0; x < n1; ++x) {
    names.push_back("L:" + g.name(x));
    src[x] = g.source(x);
    rng[x] = g.range(x);
    inv[x] = g.inv(x);
  }
  for (int x = 0; x < n2; ++x) {
    names.push_back("R:" + h.name(x));
    src[n1 + x] = n1 + h.source(x);
    rng[n1 + x] = n1 + h.range(x);
    inv[n1 + x] = n1 + h.inv(x);
  }
  for (int u : g.units()) units.push_back(u);
  for (int u : h.units()) units.push_back(n1 + u);
  for (int x = 0; x < n1; ++x)
    for (int y = 0; y < n1; ++y)
      comp[static_cast<std::size_t>(x) * n + y] = g.compose(x, y);
  for (int x = 0; x < n2; ++x)
    for (int y = 0; y < n2; ++y) {
      int xy = h.compose(x, y);
      comp[static_cast<std::size_t>(n1 + x) * n + (n1 + y)] = (xy < 0 ? -1 : n1 + xy);
    }
  return Groupoid(std::move(names), std::move(units), std::move(src),
                  std::move(rng), std::move(comp), std::move(inv));
}

/// Action groupoid G x X for a one-unit groupoid (group) acting on
/// {0..m-1} by the given permutations (one image table per group arrow).
/// Arrows are pairs (g, x) with source x and range g.x; (g, h.x)(h, x) = (gh, x).
inline Groupoid action_groupoid(const Groupoid& group,
                                const std::vector<std::vector<int>>& action) {
  if (group.num_units() != 1)
    throw std::invalid_argument("action_groupoid: group must have one unit");
  const int k = group.num_arrows();
  if (static_cast<int>(action.size()) != k)
    throw std::invalid_argument("action_groupoid: one permutation per group element required");
  const int m = static_cast<int>(action[0].size());
  const int e = group.units()[0];
  // action must be a homomorphism; checked here once since inputs are small
  for (int x = 0; x < m; ++x)
    if (action[e][x] != x)
      throw std::invalid_argument("action_groupoid: identity must act trivially");
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int x = 0; x < m; ++x)
        if (action[group.compose(a, b)][x] != action[a][action[b][x]])
          throw std::invalid_argument("action_groupoid: action is not a homomorphism");

  const int n = k * m;
  auto id = [m](int gidx, int x) { return gidx * m + x; };
  std::vector<std::string> names;
  std::vector<int> units, src(n), rng(n), inv(n);
  std::vector<int> comp(static_cast<std::size_t>(n) * n, -1);
  for (int a = 0; a < k; ++a)
    for (int x = 0; x < m; ++x) {
      names.push_back("(" + group.name(a) + "," + std::to_string(x) + ")");
      src[id(a, x)] = id(e, x);
      rng[id(a, x)] = id(e, action[a][x]);
      inv[id(a, x)] = id(group.inv(a), action[a][x]);
      if (a == e && src[id(a, x)] == id(a, x)) units.push_back(id(a, x));
    }
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int x = 0; x < m; ++x)
        comp[static_cast<std::size_t>(id(a, action[b][x])) * n + id(b, x)] =
            id(group.compose(a, b), x);
  return Groupoid(std::move(names), std::move(units), std::move(src),
                  std::move(rng), std::move(comp), std::move(inv));
}

}  // namespace gpdalg

#endif  // GPDALG_GROUPOID_HPP
