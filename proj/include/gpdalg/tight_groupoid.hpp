#ifndef GPDALG_TIGHT_GROUPOID_HPP
#define GPDALG_TIGHT_GROUPOID_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gpdalg/inverse_semigroup.hpp"

namespace gpdalg {

/// The meet-semilattice of idempotents of an inverse semigroup, with
/// meet = multiplication and e <= f iff ef = e. Requires a zero.
class Semilattice {
public:
  static Semilattice from_inverse_semigroup(const InvSemigroup& s) {
    Semilattice l;
    l.sg_idx_ = s.idempotents();
    const int m = static_cast<int>(l.sg_idx_.size());
    if (m > 62)
      throw WorkBoundExceeded("Semilattice: more than 62 idempotents");
    std::map<int, int> back;
    for (int i = 0; i < m; ++i) back[l.sg_idx_[i]] = i;
    l.meet_.assign(static_cast<std::size_t>(m) * m, -1);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        int p = s.mul(l.sg_idx_[i], l.sg_idx_[j]);
        auto it = back.find(p);
        if (it == back.end())
          throw std::invalid_argument("Semilattice: idempotents not closed under product");
        l.meet_[static_cast<std::size_t>(i) * m + j] = it->second;
      }
    l.zero_ = -1;
    for (int z = 0; z < m; ++z) {
      bool ok = true;
      for (int e = 0; e < m && ok; ++e) ok = (l.meet(z, e) == z);
      if (ok) {
        l.zero_ = z;
        break;
      }
    }
    if (l.zero_ < 0)
      throw std::invalid_argument("Semilattice: no zero element (adjoin one first)");
    return l;
  }

  int size() const { return static_cast<int>(sg_idx_.size()); }
  int meet(int a, int b) const { return meet_[static_cast<std::size_t>(a) * size() + b]; }
  bool leq(int a, int b) const { return meet(a, b) == a; }
  int zero() const { return zero_; }
  /// Index of semilattice element i in the parent semigroup.
  int sg_index(int i) const { return sg_idx_[i]; }
  int from_sg_index(int s) const {
    for (int i = 0; i < size(); ++i)
      if (sg_idx_[i] == s) return i;
    return -1;
  }

private:
  std::vector<int> sg_idx_;
  std::vector<int> meet_;
  int zero_ = -1;
};

/// A filter is a set of nonzero idempotents, nonempty, upward closed and
/// meet closed; stored as a bitmask over semilattice indices.
using FilterMask = std::uint64_t;

inline bool is_filter(const Semilattice& l, FilterMask mask) {
  if (mask == 0) return false;
  if (mask & (1ull << l.zero())) return false;
  for (int a = 0; a < l.size(); ++a) {
    if (!(mask >> a & 1)) continue;
    for (int b = 0; b < l.size(); ++b) {
      if (mask >> b & 1) {
        if (!(mask >> l.meet(a, b) & 1)) return false;  // meet closed (and no zero)
      } else if (l.leq(a, b)) {
        return false;  // not upward closed
      }
    }
  }
  return true;
}

/// All filters, by exhaustive subset enumeration. Intentionally naive: this
/// is the independent route the maximality- and cover-based definitions are
/// checked against.
inline std::vector<FilterMask> enumerate_filters(const Semilattice& l) {
  const int m = l.size();
  if (m > 21) throw WorkBoundExceeded("enumerate_filters: semilattice too large");
  std::vector<FilterMask> out;
  for (FilterMask mask = 1; mask < (1ull << m); ++mask)
    if (is_filter(l, mask)) out.push_back(mask);
  return out;
}

/// Minimum of a filter (finite meet of all members; lies in the filter).
inline int filter_min(const Semilattice& l, FilterMask mask) {
  int cur = -1;
  for (int a = 0; a < l.size(); ++a)
    if (mask >> a & 1) cur = (cur < 0) ? a : l.meet(cur, a);
  return cur;
}

/// Principal filter: up-set of a nonzero element.
inline FilterMask principal_filter(const Semilattice& l, int e) {
  FilterMask mask = 0;
  for (int a = 0; a < l.size(); ++a)
    if (l.leq(e, a)) mask |= 1ull << a;
  return mask;
}

/// Maximal filters. Computed twice: as inclusion-maximal members of the
/// full filter enumeration, and as principal up-sets of minimal nonzero
/// elements. A mismatch between the two routes is a hard failure.
inline std::vector<FilterMask> ultrafilters(const Semilattice& l) {
  std::vector<FilterMask> all = enumerate_filters(l);
  std::vector<FilterMask> maximal;
  for (FilterMask f : all) {
    bool is_max = true;
    for (FilterMask g : all)
      if (g != f && (f & g) == f) {
        is_max = false;
        break;
      }
    if (is_max) maximal.push_back(f);
  }

  std::vector<FilterMask> principal;
  for (int e = 0; e < l.size(); ++e) {
    if (e == l.zero()) continue;
    bool minimal = true;
    for (int f = 0; f < l.size(); ++f)
      if (f != e && f != l.zero() && l.leq(f, e)) {
        minimal = false;
        break;
      }
    if (minimal) principal.push_back(principal_filter(l, e));
  }
  std::sort(maximal.begin(), maximal.end());
  std::sort(principal.begin(), principal.end());
  if (maximal != principal)
    throw std::runtime_error("ultrafilters: maximality and principal-up-set routes disagree");
  return maximal;
}

namespace detail {

/// F (subset mask of the nonzero down-set of e) is an outer cover of e if
/// every nonzero g <= e meets some member of F.
inline bool is_cover(const Semilattice& l, int e, const std::vector<int>& downset,
                     std::uint64_t fmask) {
  for (int g : downset) {
    bool met = false;
    for (std::size_t i = 0; i < downset.size() && !met; ++i)
      if (fmask >> i & 1) met = (l.meet(g, downset[i]) != l.zero());
    if (!met) return false;
  }
  return true;
}

}  // namespace detail

/// Tight filters via Exel's cover condition: a filter is tight iff for
/// every member e and every cover of e, the filter contains a member of the
/// cover. In a finite semilattice this coincides with the ultrafilters;
/// the equality is asserted by callers, not here.
inline std::vector<FilterMask> tight_filters(const Semilattice& l) {
  std::vector<FilterMask> out;
  for (FilterMask xi : enumerate_filters(l)) {
    bool tight = true;
    for (int e = 0; e < l.size() && tight; ++e) {
      if (!(xi >> e & 1)) continue;
      std::vector<int> downset;
      for (int f = 0; f < l.size(); ++f)
        if (f != l.zero() && l.leq(f, e)) downset.push_back(f);
      if (downset.size() > 20)
        throw WorkBoundExceeded("tight_filters: down-set too large for cover enumeration");
      for (std::uint64_t fmask = 0; fmask < (1ull << downset.size()) && tight; ++fmask) {
        if (!detail::is_cover(l, e, downset, fmask)) continue;
        bool hits = false;
        for (std::size_t i = 0; i < downset.size() && !hits; ++i)
          if (fmask >> i & 1) hits = (xi >> downset[i] & 1) != 0;
        if (!hits) tight = false;
      }
    }
    if (tight) out.push_back(xi);
  }
  return out;
}

/// Exel's tight groupoid of an inverse semigroup: units are the tight
/// filters of E(S), arrows are germ classes [s, phi] with s^dag s in phi.
/// Since every filter here is principal with minimum m, the germ class of
/// (s, phi) is keyed by (s.m, phi).
struct TightGroupoidResult {
  Groupoid groupoid;
  bool zero_adjoined = false;
  int tight_filter_count = 0;
  int germ_count = 0;
};

inline TightGroupoidResult tight_groupoid(const InvSemigroup& s_in) {
  {
    auto violations = s_in.verify();
    if (!violations.empty())
      throw std::invalid_argument("tight_groupoid: input is not an inverse semigroup: " +
                                  violations.front());
  }
  const bool adjoin = !s_in.zero().has_value();
  InvSemigroup s = adjoin ? s_in.with_zero_adjoined() : s_in;
  Semilattice l = Semilattice::from_inverse_semigroup(s);

  std::vector<FilterMask> tf = tight_filters(l);
  {
    // finite-case collapse: the cover-based route must match the
    // maximality route exactly
    std::vector<FilterMask> uf = ultrafilters(l);
    std::vector<FilterMask> a = tf, b = uf;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b)
      throw std::runtime_error("tight_groupoid: tight filters differ from ultrafilters");
  }

  const int nf = static_cast<int>(tf.size());
  std::vector<int> fmin(nf);  // minimum of each filter, as an S index
  std::map<int, int> filter_by_min;
  for (int i = 0; i < nf; ++i) {
    fmin[i] = l.sg_index(filter_min(l, tf[i]));
    filter_by_min[fmin[i]] = i;
  }
  auto filter_contains_sg = [&](int fi, int sg_elem) {
    int li = l.from_sg_index(sg_elem);
    return li >= 0 && (tf[fi] >> li & 1) != 0;
  };

  // Germ classes keyed by (s * min(phi), phi); representative is the least
  // member index for deterministic naming.
  std::map<std::pair<int, int>, int> germ_id;
  std::vector<std::pair<int, int>> germ_key;  // (canonical element, filter)
  std::vector<int> germ_rep;
  for (int fi = 0; fi < nf; ++fi)
    for (int e = 0; e < s.size(); ++e) {
      if (s.dagger(e) < 0) continue;
      if (!filter_contains_sg(fi, s.mul(s.dagger(e), e))) continue;
      int canon = s.mul(e, fmin[fi]);
      auto key = std::make_pair(canon, fi);
      auto it = germ_id.find(key);
      if (it == germ_id.end()) {
        germ_id[key] = static_cast<int>(germ_key.size());
        germ_key.push_back(key);
        germ_rep.push_back(e);
      } else {
        germ_rep[it->second] = std::min(germ_rep[it->second], e);
      }
    }

  const int n = static_cast<int>(germ_key.size());
  auto range_filter_of = [&](int gi) {
    int r = germ_key[gi].first;
    int rr = s.mul(r, s.dagger(r));  // = s . min . s^dag, the new minimum
    auto it = filter_by_min.find(rr);
    if (it == filter_by_min.end())
      throw std::runtime_error("tight_groupoid: action image is not a tight filter");
    return it->second;
  };

  // Unit arrow of each filter: the germ of (min(phi), phi).
  std::vector<int> unit_arrow(nf, -1);
  for (int fi = 0; fi < nf; ++fi) {
    auto it = germ_id.find({fmin[fi], fi});
    if (it == germ_id.end())
      throw std::runtime_error("tight_groupoid: missing unit germ");
    unit_arrow[fi] = it->second;
  }

  std::vector<std::string> names(n);
  std::vector<int> units, src(n), rng(n), inv(n);
  std::vector<int> comp(static_cast<std::size_t>(n) * n, -1);
  std::vector<int> src_filter(n), rng_filter(n);
  for (int gi = 0; gi < n; ++gi) {
    int fi = germ_key[gi].second;
    src_filter[gi] = fi;
    rng_filter[gi] = range_filter_of(gi);
    src[gi] = -1;  // filled below once unit arrows are known
    names[gi] = "[" + s.name(germ_rep[gi]) + ";^" + s.name(fmin[fi]) + "]";
  }
  for (int fi = 0; fi < nf; ++fi) units.push_back(unit_arrow[fi]);
  for (int gi = 0; gi < n; ++gi) {
    src[gi] = unit_arrow[src_filter[gi]];
    rng[gi] = unit_arrow[rng_filter[gi]];
    int r = germ_key[gi].first;
    int fi_inv = rng_filter[gi];
    auto it = germ_id.find({s.dagger(r), fi_inv});
    if (it == germ_id.end())
      throw std::runtime_error("tight_groupoid: missing inverse germ");
    inv[gi] = it->second;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (src_filter[a] != rng_filter[b]) continue;
      int prod = s.mul(germ_key[a].first, germ_key[b].first);
      int fb = src_filter[b];
      auto it = germ_id.find({s.mul(prod, fmin[fb]), fb});
      if (it == germ_id.end())
        throw std::runtime_error("tight_groupoid: composite germ not found");
      comp[static_cast<std::size_t>(a) * n + b] = it->second;
    }

  Groupoid g(std::move(names), std::move(units), std::move(src), std::move(rng),
             std::move(comp), std::move(inv));
  auto violations = g.validate();
  if (!violations.empty())
    throw std::runtime_error("tight_groupoid: output fails validation: " +
                             violations.front().axiom);
  return TightGroupoidResult{std::move(g), adjoin, nf, n};
}

}  // namespace gpdalg

#endif  // GPDALG_TIGHT_GROUPOID_HPP
