#ifndef GPDALG_INVERSE_SEMIGROUP_HPP
#define GPDALG_INVERSE_SEMIGROUP_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gpdalg/bisection.hpp"
#include "gpdalg/groupoid.hpp"

namespace gpdalg {

/// A finite inverse semigroup given by a total multiplication table.
/// The dagger table is derived: s -> the unique t with s = sts, t = tst.
/// Construction does not verify the axioms; call verify().
class InvSemigroup {
public:
  InvSemigroup(std::vector<std::string> names, std::vector<int> mul_table)
      : names_(std::move(names)), mul_(std::move(mul_table)) {
    const int n = size();
    if (mul_.size() != static_cast<std::size_t>(n) * n)
      throw std::invalid_argument("InvSemigroup: multiplication table size mismatch");
    for (int v : mul_)
      if (v < 0 || v >= n)
        throw std::invalid_argument("InvSemigroup: table entry out of range");
    derive_daggers();
    find_zero();
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[i]; }
  int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * size() + b]; }
  /// -1 when no unique generalized inverse exists (verify() reports it).
  int dagger(int a) const { return dag_[a]; }
  std::optional<int> zero() const { return zero_; }

  bool is_idempotent(int a) const { return mul(a, a) == a; }
  std::vector<int> idempotents() const {
    std::vector<int> out;
    for (int a = 0; a < size(); ++a)
      if (is_idempotent(a)) out.push_back(a);
    return out;
  }

  /// Empty iff associative, every element has a generalized inverse, and
  /// idempotents commute (which makes generalized inverses unique).
  std::vector<std::string> verify() const {
    std::vector<std::string> out;
    const int n = size();
    for (int a = 0; a < n && out.size() < 32; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
            out.push_back("associativity fails at (" + names_[a] + "," + names_[b] +
                          "," + names_[c] + ")");
            break;
          }
    for (int a = 0; a < n; ++a) {
      int count = 0;
      for (int b = 0; b < n; ++b)
        if (mul(mul(a, b), a) == a && mul(mul(b, a), b) == b) ++count;
      if (count == 0)
        out.push_back("no generalized inverse for " + names_[a]);
      else if (count > 1)
        out.push_back("generalized inverse of " + names_[a] + " is not unique");
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < a; ++b)
        if (is_idempotent(a) && is_idempotent(b) && mul(a, b) != mul(b, a))
          out.push_back("idempotents " + names_[a] + " and " + names_[b] +
                        " do not commute");
    return out;
  }

  /// Copy with a fresh absorbing zero appended (used before filter
  /// computations when no zero is present).
  InvSemigroup with_zero_adjoined() const {
    const int n = size();
    std::vector<std::string> names = names_;
    names.push_back("0");
    std::vector<int> mul(static_cast<std::size_t>(n + 1) * (n + 1), n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        mul[static_cast<std::size_t>(a) * (n + 1) + b] = this->mul(a, b);
    return InvSemigroup(std::move(names), std::move(mul));
  }

private:
  void derive_daggers() {
    const int n = size();
    dag_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
      int found = -1;
      bool unique = true;
      for (int b = 0; b < n; ++b)
        if (mul(mul(a, b), a) == a && mul(mul(b, a), b) == b) {
          if (found >= 0) unique = false;
          found = b;
        }
      dag_[a] = unique ? found : -1;
    }
  }
  void find_zero() {
    for (int z = 0; z < size(); ++z) {
      bool ok = true;
      for (int a = 0; a < size() && ok; ++a)
        ok = (mul(z, a) == z && mul(a, z) == z);
      if (ok) {
        zero_ = z;
        return;
      }
    }
  }

  std::vector<std::string> names_;
  std::vector<int> mul_;
  std::vector<int> dag_;
  std::optional<int> zero_;
};

namespace detail {
inline std::string bisection_label(const Groupoid& g, const Bisection& b) {
  if (b.empty()) return "{}";
  std::string s = "{";
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) s += ",";
    s += g.name(b[i]);
  }
  return s + "}";
}
}  // namespace detail

/// The inverse semigroup of compact open bisections B_c^o(G), with zero
/// element the empty bisection.
struct BisectionSemigroup {
  InvSemigroup sg;
  std::vector<Bisection> bisections;  // element i of sg is bisections[i]

  int index_of(const Bisection& b) const {
    auto it = std::lower_bound(bisections.begin(), bisections.end(), b);
    if (it == bisections.end() || *it != b)
      throw std::invalid_argument("BisectionSemigroup: unknown bisection");
    return static_cast<int>(it - bisections.begin());
  }
};

inline BisectionSemigroup from_bisections(const Groupoid& g,
                                          std::uint64_t work_bound = (1ull << 24)) {
  std::vector<Bisection> bs = enumerate_bisections(g, work_bound);  // sorted
  const int n = static_cast<int>(bs.size());
  std::vector<std::string> names;
  names.reserve(n);
  for (const auto& b : bs) names.push_back(detail::bisection_label(g, b));
  auto idx = [&](const Bisection& b) {
    return static_cast<int>(std::lower_bound(bs.begin(), bs.end(), b) - bs.begin());
  };
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      mul[static_cast<std::size_t>(i) * n + j] = idx(bisection_mul(g, bs[i], bs[j]));
  return BisectionSemigroup{InvSemigroup(std::move(names), std::move(mul)),
                            std::move(bs)};
}

}  // namespace gpdalg

#endif  // GPDALG_INVERSE_SEMIGROUP_HPP
