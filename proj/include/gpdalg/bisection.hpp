#ifndef GPDALG_BISECTION_HPP
#define GPDALG_BISECTION_HPP

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "gpdalg/groupoid.hpp"

namespace gpdalg {

/// A bisection is a sorted subset of arrows on which both source and range
/// are injective. Every subset of the unit space is a bisection; singletons
/// always are.
using Bisection = std::vector<int>;  // sorted arrow ids

struct WorkBoundExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool is_bisection(const Groupoid& g, const Bisection& a) {
  std::set<int> srcs, rngs;
  for (int x : a) {
    if (!srcs.insert(g.source(x)).second) return false;
    if (!rngs.insert(g.range(x)).second) return false;
  }
  return true;
}

inline Bisection make_bisection(const Groupoid& g, std::vector<int> arrows) {
  std::sort(arrows.begin(), arrows.end());
  arrows.erase(std::unique(arrows.begin(), arrows.end()), arrows.end());
  if (!is_bisection(g, arrows))
    throw std::invalid_argument("make_bisection: source or range not injective");
  return arrows;
}

/// AB = { ab : a in A, b in B, s(a) = r(b) }. The product of bisections is
/// again a bisection.
inline Bisection bisection_mul(const Groupoid& g, const Bisection& a, const Bisection& b) {
  std::vector<int> out;
  for (int x : a)
    for (int y : b)
      if (g.composable(x, y)) out.push_back(g.compose(x, y));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline Bisection bisection_inv(const Groupoid& g, const Bisection& a) {
  std::vector<int> out;
  for (int x : a) out.push_back(g.inv(x));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<int> source_set(const Groupoid& g, const Bisection& a) {
  std::vector<int> out;
  for (int x : a) out.push_back(g.source(x));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<int> range_set(const Groupoid& g, const Bisection& a) {
  std::vector<int> out;
  for (int x : a) out.push_back(g.range(x));
  std::sort(out.begin(), out.end());
  return out;
}

/// All bisections of g, including the empty one. Exhaustive backtracking
/// over arrows with pruning on source/range injectivity. The work bound
/// counts search nodes and guards against oversized inputs.
inline std::vector<Bisection> enumerate_bisections(const Groupoid& g,
                                                   std::uint64_t work_bound = (1ull << 24)) {
  const int n = g.num_arrows();
  std::vector<Bisection> out;
  std::vector<int> current;
  std::vector<bool> src_used(n, false), rng_used(n, false);
  std::uint64_t work = 0;

  auto rec = [&](auto&& self, int next) -> void {
    if (++work > work_bound)
      throw WorkBoundExceeded("enumerate_bisections: work bound exceeded");
    out.push_back(current);
    for (int x = next; x < n; ++x) {
      int s = g.source(x), r = g.range(x);
      if (src_used[s] || rng_used[r]) continue;
      src_used[s] = rng_used[r] = true;
      current.push_back(x);
      self(self, x + 1);
      current.pop_back();
      src_used[s] = rng_used[r] = false;
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gpdalg

#endif  // GPDALG_BISECTION_HPP
