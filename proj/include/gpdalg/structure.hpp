#ifndef GPDALG_STRUCTURE_HPP
#define GPDALG_STRUCTURE_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "gpdalg/inverse_semigroup.hpp"
#include "gpdalg/lp_rep.hpp"

namespace gpdalg {

enum class NormKind { Fp, SymFp, INorm };

/// C_c(G) together with a choice of norm: F^p_lambda, its symmetrized
/// variant, or the I-norm completion. Structure-theorem operations refuse
/// p = 2; the lone p = 2 negative control works with lp_rep directly.
struct AlgebraContext {
  const Groupoid* g;
  NormKind kind;
  double p;
  std::uint64_t seed;

  AlgebraContext(const Groupoid& groupoid, NormKind k, double exponent = 1.0,
                 std::uint64_t s = 0)
      : g(&groupoid), kind(k), p(k == NormKind::INorm ? 1.0 : exponent), seed(s) {
    if (p < 1) throw std::invalid_argument("AlgebraContext: p must be >= 1");
  }

  bool is_two() const { return kind != NormKind::INorm && p == 2; }
  void require_structure() const {
    if (is_two())
      throw std::invalid_argument(
          "p = 2 is excluded from the structure theory (hermitian elements are "
          "not confined to the unit space there)");
  }

  double norm(const AlgElem& f) const {
    switch (kind) {
      case NormKind::Fp:
        return fp_norm(*g, f, p, seed).value;
      case NormKind::SymFp:
        return sym_norm(*g, f, p, seed).value;
      case NormKind::INorm:
        return i_norm(*g, f);
    }
    return 0;  // unreachable
  }
};

// Tolerance regimes: exact algebraic identities at 1e-9, anything that
// passes through the iterative norm solver at 1e-6.
inline constexpr double kAlgTol = 1e-9;
inline constexpr double kNormTol = 1e-6;

struct HermitianEvidence {
  bool structural = false;
  bool numerical = false;
  double worst_exp_norm = 0;  // largest ||exp(itf)|| over the t grid
  bool verdict() const { return structural; }
};

/// Hermitian test. Structural: f vanishes off the unit space and is real
/// there. Numerical: ||exp(itf)|| <= 1 + tol over t in +-{0.1,0.3,1,3,10}.
/// For p != 2 the two must agree; disagreement means a solver bug.
inline HermitianEvidence is_hermitian(const AlgebraContext& ctx, const AlgElem& f) {
  const Groupoid& g = *ctx.g;
  HermitianEvidence ev;
  ev.structural = true;
  for (int x = 0; x < g.num_arrows(); ++x) {
    if (g.is_unit(x)) {
      if (std::abs(f[x].imag()) > kAlgTol) ev.structural = false;
    } else if (std::abs(f[x]) > kAlgTol) {
      ev.structural = false;
    }
  }
  ev.numerical = true;
  static const double grid[] = {0.1, -0.1, 0.3, -0.3, 1, -1, 3, -3, 10, -10};
  for (double t : grid) {
    AlgElem e = alg_exp(g, Complex(0, t) * f);
    double nrm = ctx.norm(e);
    ev.worst_exp_norm = std::max(ev.worst_exp_norm, nrm);
    if (nrm > 1 + kNormTol) ev.numerical = false;
  }
  if (!ctx.is_two() && ev.structural != ev.numerical)
    throw std::runtime_error("is_hermitian: structural and numerical tests disagree");
  return ev;
}

/// The C*-core = span of hermitian elements = functions supported on the
/// unit space, with the restriction map to functions on G^(0).
struct CoreData {
  std::vector<AlgElem> basis;  // indicator of each unit, in units() order
  int dimension() const { return static_cast<int>(basis.size()); }
};

inline CoreData core(const AlgebraContext& ctx) {
  ctx.require_structure();
  CoreData out;
  for (int u : ctx.g->units()) {
    AlgElem e(*ctx.g);
    e[u] = 1;
    out.basis.push_back(std::move(e));
  }
  return out;
}

/// Restriction of a core element to the unit space (Renault j-map followed
/// by restriction; on C_c(G) the j-map is the identity).
inline std::vector<Complex> core_restrict(const AlgebraContext& ctx, const AlgElem& f) {
  std::vector<Complex> out;
  for (int u : ctx.g->units()) out.push_back(f[u]);
  return out;
}

struct UltrahermitianEvidence {
  bool structural = false;
  bool sampled = false;
  double worst_compression_norm = 0;
};

/// Ultrahermitian test for an idempotent e: structurally, e must be a
/// {0,1}-valued function on the unit space; the sampled test compresses
/// random contraction pairs to complementary corners and checks the result
/// stays contractive.
inline UltrahermitianEvidence is_ultrahermitian_idempotent(const AlgebraContext& ctx,
                                                           const AlgElem& e,
                                                           int samples,
                                                           std::uint64_t seed) {
  const Groupoid& g = *ctx.g;
  if (dist_sup(convolve(g, e, e), e) > kAlgTol)
    throw std::invalid_argument("is_ultrahermitian_idempotent: input is not idempotent");
  UltrahermitianEvidence ev;
  ev.structural = true;
  for (int x = 0; x < g.num_arrows(); ++x) {
    if (g.is_unit(x)) {
      if (std::abs(e[x]) > kAlgTol && std::abs(e[x] - Complex(1, 0)) > kAlgTol)
        ev.structural = false;
    } else if (std::abs(e[x]) > kAlgTol) {
      ev.structural = false;
    }
  }
  AlgElem comp = unit_element(g) - e;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_contraction = [&]() {
    AlgElem a(g);
    for (int x = 0; x < g.num_arrows(); ++x) a[x] = Complex(gauss(rng), gauss(rng));
    double n = ctx.norm(a);
    if (n > 0) a *= Complex(1.0 / n, 0);
    return a;
  };
  ev.sampled = true;
  for (int k = 0; k < samples; ++k) {
    AlgElem a = random_contraction();
    AlgElem b = random_contraction();
    AlgElem c = convolve(g, convolve(g, e, a), e) +
                convolve(g, convolve(g, comp, b), comp);
    double n = ctx.norm(c);
    ev.worst_compression_norm = std::max(ev.worst_compression_norm, n);
    if (n > 1 + kNormTol) ev.sampled = false;
  }
  return ev;
}

/// Moore-Penrose axioms: a = aba, b = bab, ab and ba hermitian.
inline bool verify_mp(const AlgebraContext& ctx, const AlgElem& a, const AlgElem& b) {
  const Groupoid& g = *ctx.g;
  AlgElem ab = convolve(g, a, b);
  AlgElem ba = convolve(g, b, a);
  if (dist_sup(convolve(g, ab, a), a) > kAlgTol) return false;
  if (dist_sup(convolve(g, ba, b), b) > kAlgTol) return false;
  return is_hermitian(ctx, ab).verdict() && is_hermitian(ctx, ba).verdict();
}

/// Closed-form Moore-Penrose inverse: when supp(a) is a bisection B with
/// nonvanishing values, b(x^-1) = 1/a(x) on B. Returns nullopt when the
/// closed form does not apply; construction failure after it does apply is
/// a hard failure.
inline std::optional<AlgElem> mp_inverse(const AlgebraContext& ctx, const AlgElem& a) {
  const Groupoid& g = *ctx.g;
  std::vector<int> supp = a.support(kAlgTol);
  if (supp.empty()) return AlgElem(g);  // 0^dag = 0
  if (!is_bisection(g, supp)) return std::nullopt;
  AlgElem b(g);
  for (int x : supp) b[g.inv(x)] = Complex(1, 0) / a[x];
  if (!verify_mp(ctx, a, b))
    throw std::runtime_error("mp_inverse: closed form failed MP verification");
  return b;
}

/// Witness of the structure theorem: an MP-partial isometry is a unimodular
/// phase function on a compact open bisection.
struct MPDecomposition {
  Bisection bisection;
  std::vector<Complex> phase;  // aligned with bisection order
};

/// Membership in PI_MP: contractive with contractive Moore-Penrose inverse.
/// The support of any MP-partial isometry is a bisection, so non-bisection
/// supports are rejected up front; the randomized-search tests validate
/// this shortcut independently.
inline std::optional<MPDecomposition> is_mp_partial_isometry(const AlgebraContext& ctx,
                                                             const AlgElem& a) {
  ctx.require_structure();
  if (ctx.norm(a) > 1 + kNormTol) return std::nullopt;
  std::optional<AlgElem> b = mp_inverse(ctx, a);
  if (!b) return std::nullopt;
  if (ctx.norm(*b) > 1 + kNormTol) return std::nullopt;
  MPDecomposition dec;
  dec.bisection = a.support(kAlgTol);
  for (int x : dec.bisection) {
    if (std::abs(std::abs(a[x]) - 1.0) > kNormTol)
      throw std::runtime_error("is_mp_partial_isometry: contractive MP pair with "
                               "non-unimodular support value");
    dec.phase.push_back(a[x]);
  }
  return dec;
}

/// Canonical homotopy representative: the support bisection.
inline Bisection homotopy_rep(const AlgebraContext& ctx, const AlgElem& a) {
  auto dec = is_mp_partial_isometry(ctx, a);
  if (!dec)
    throw std::invalid_argument("homotopy_rep: input is not an MP-partial isometry");
  return dec->bisection;
}

/// Witness path from a to 1_supp(a) through PI_MP, by per-arrow phase
/// interpolation (the finite-discrete degeneration of the two-patch
/// argument). Sample k is h_{k/steps}; h_0 = a, h_steps = 1_B.
inline std::vector<AlgElem> homotopy_path(const AlgebraContext& ctx, const AlgElem& a,
                                          int steps) {
  auto dec = is_mp_partial_isometry(ctx, a);
  if (!dec)
    throw std::invalid_argument("homotopy_path: input is not an MP-partial isometry");
  std::vector<AlgElem> out;
  out.push_back(a);
  for (int k = 1; k <= steps; ++k) {
    double t = static_cast<double>(k) / steps;
    AlgElem h(*ctx.g);
    for (std::size_t i = 0; i < dec->bisection.size(); ++i) {
      double theta = std::arg(dec->phase[i]);
      h[dec->bisection[i]] = std::polar(1.0, (1.0 - t) * theta);
    }
    out.push_back(std::move(h));
  }
  return out;
}

/// Filters a sample of MP-partial isometries down to the normalizers of a
/// commuting family E of hermitian idempotents, closes under products, and
/// returns the abstract inverse semigroup of the closure.
/// Membership in N_E: a is Moore-Penrose invertible with a^dag a, a a^dag
/// and all conjugates a^dag e a, a e a^dag inside the family E.
inline bool normalizes(const AlgebraContext& ctx, const AlgElem& a,
                       const std::vector<AlgElem>& idempotent_family) {
  const Groupoid& g = *ctx.g;
  auto in_family = [&](const AlgElem& f) {
    for (const auto& e : idempotent_family)
      if (approx_equal(f, e, kAlgTol)) return true;
    return false;
  };
  std::optional<AlgElem> b = mp_inverse(ctx, a);
  if (!b) return false;
  if (!in_family(convolve(g, *b, a)) || !in_family(convolve(g, a, *b))) return false;
  for (const auto& e : idempotent_family)
    if (!in_family(convolve(g, convolve(g, *b, e), a)) ||
        !in_family(convolve(g, convolve(g, a, e), *b)))
      return false;
  return true;
}

inline InvSemigroup normalizer_semigroup(const AlgebraContext& ctx,
                                         const std::vector<AlgElem>& elements,
                                         const std::vector<AlgElem>& idempotent_family,
                                         int closure_bound = 512) {
  const Groupoid& g = *ctx.g;
  std::vector<AlgElem> members;
  auto find_member = [&](const AlgElem& f) {
    for (std::size_t i = 0; i < members.size(); ++i)
      if (approx_equal(f, members[i], kAlgTol)) return static_cast<int>(i);
    return -1;
  };
  for (const auto& a : elements)
    if (normalizes(ctx, a, idempotent_family) && find_member(a) < 0)
      members.push_back(a);
  // close under products
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j < members.size(); ++j) {
      AlgElem prod = convolve(g, members[i], members[j]);
      if (find_member(prod) < 0) {
        members.push_back(prod);
        if (static_cast<int>(members.size()) > closure_bound)
          throw WorkBoundExceeded("normalizer_semigroup: closure bound exceeded");
      }
    }
  const int n = static_cast<int>(members.size());
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("n" + std::to_string(i));
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int k = find_member(convolve(g, members[i], members[j]));
      if (k < 0) throw std::logic_error("normalizer_semigroup: closure is not closed");
      mul[static_cast<std::size_t>(i) * n + j] = k;
    }
  return InvSemigroup(std::move(names), std::move(mul));
}

/// Closure and compatibility report for a sample of MP-partial isometries.
struct PiMpReport {
  int sample_size = 0;
  bool products_closed = true;        // ab is again an MP-partial isometry
  bool dagger_antimultiplicative = true;  // (ab)^dag = b^dag a^dag
  bool conjugated_idempotents_ok = true;  // a^dag e a hermitian idempotent
  bool members_normalize = true;      // each a lies in N_E
  bool normalizer_is_inverse_semigroup = true;
  int normalizer_size = 0;
};

inline PiMpReport pi_mp_semigroup_check(const AlgebraContext& ctx,
                                        const std::vector<AlgElem>& sample) {
  const Groupoid& g = *ctx.g;
  PiMpReport rep;
  rep.sample_size = static_cast<int>(sample.size());
  std::vector<AlgElem> daggers;
  for (const auto& a : sample) {
    if (!is_mp_partial_isometry(ctx, a))
      throw std::invalid_argument("pi_mp_semigroup_check: sample member is not an "
                                  "MP-partial isometry");
    daggers.push_back(*mp_inverse(ctx, a));
  }
  for (std::size_t i = 0; i < sample.size(); ++i)
    for (std::size_t j = 0; j < sample.size(); ++j) {
      AlgElem prod = convolve(g, sample[i], sample[j]);
      auto dec = is_mp_partial_isometry(ctx, prod);
      if (!dec) {
        rep.products_closed = false;
        continue;
      }
      AlgElem expect = convolve(g, daggers[j], daggers[i]);
      if (dist_sup(*mp_inverse(ctx, prod), expect) > kAlgTol)
        rep.dagger_antimultiplicative = false;
    }
  // hermitian idempotents on the unit space, conjugated through the sample
  std::vector<AlgElem> herm_idem;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const AlgElem& e = sample[i];
    if (approx_equal(convolve(g, e, e), e, kAlgTol) && is_hermitian(ctx, e).verdict())
      herm_idem.push_back(e);
  }
  for (std::size_t i = 0; i < sample.size(); ++i)
    for (const auto& e : herm_idem) {
      AlgElem c = convolve(g, convolve(g, daggers[i], e), sample[i]);
      if (dist_sup(convolve(g, c, c), c) > kAlgTol || !is_hermitian(ctx, c).verdict())
        rep.conjugated_idempotents_ok = false;
    }
  // normalizers of the full family of {0,1}-functions on units; each sample
  // member must lie in N_E, and the finite table is built from the homotopy
  // skeletons 1_supp(a) (the phase-decorated members generate an infinite
  // phase group under products, so they cannot be tabulated directly)
  std::vector<AlgElem> family;
  const auto& us = g.units();
  for (std::uint64_t mask = 0; mask < (1ull << us.size()); ++mask) {
    AlgElem e(g);
    for (std::size_t i = 0; i < us.size(); ++i)
      if (mask >> i & 1) e[us[i]] = 1;
    family.push_back(std::move(e));
  }
  std::vector<AlgElem> skeletons;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (!normalizes(ctx, sample[i], family)) rep.members_normalize = false;
    skeletons.push_back(indicator(g, sample[i].support(kAlgTol)));
  }
  InvSemigroup ne = normalizer_semigroup(ctx, skeletons, family);
  rep.normalizer_size = ne.size();
  rep.normalizer_is_inverse_semigroup = ne.verify().empty();
  return rep;
}

/// S_pi as the inverse semigroup of homotopy classes, represented by the
/// canonical section B -> [1_B]. Each representative is checked to be an
/// MP-partial isometry, and the class map is checked multiplicative
/// against convolution.
struct SpiResult {
  BisectionSemigroup semigroup;
  bool section_verified = false;      // every 1_B passes the PI_MP test
  bool multiplicativity_verified = false;  // 1_A * 1_B = 1_{AB}
};

inline SpiResult spi_semigroup(const AlgebraContext& ctx,
                               std::uint64_t work_bound = (1ull << 24)) {
  ctx.require_structure();
  const Groupoid& g = *ctx.g;
  SpiResult out{from_bisections(g, work_bound), true, true};
  const auto& bs = out.semigroup.bisections;
  for (const auto& b : bs)
    if (!is_mp_partial_isometry(ctx, indicator(g, b))) out.section_verified = false;
  for (std::size_t i = 0; i < bs.size(); ++i)
    for (std::size_t j = 0; j < bs.size(); ++j) {
      AlgElem lhs = convolve(g, indicator(g, bs[i]), indicator(g, bs[j]));
      AlgElem rhs = indicator(g, bisection_mul(g, bs[i], bs[j]));
      if (dist_sup(lhs, rhs) > kAlgTol) out.multiplicativity_verified = false;
    }
  return out;
}

}  // namespace gpdalg

#endif  // GPDALG_STRUCTURE_HPP
