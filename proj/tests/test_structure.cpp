#include <catch2/catch_amalgamated.hpp>

#include "gpdalg/structure.hpp"
#include "test_support.hpp"

using namespace gpdalg;
using gpdalg::testing::mp_inverse_oracle;
using gpdalg::testing::random_elem;
using gpdalg::testing::random_phase_indicator;

namespace {
AlgElem delta(const Groupoid& g, int x, Complex z = Complex(1, 0)) {
  AlgElem f(g);
  f[x] = z;
  return f;
}

int arrow_by_name(const Groupoid& g, const std::string& name) {
  for (int x = 0; x < g.num_arrows(); ++x)
    if (g.name(x) == name) return x;
  FAIL("no arrow named " + name);
  return -1;
}
}  // namespace

TEST_CASE("p = 2 is refused by structure operations") {
  Groupoid p2 = pair_groupoid(2);
  AlgebraContext two(p2, NormKind::Fp, 2.0);
  CHECK_THROWS_AS(two.require_structure(), std::invalid_argument);
  CHECK_THROWS_AS(core(two), std::invalid_argument);
  CHECK_THROWS_AS(spi_semigroup(two), std::invalid_argument);
  // the I-norm context has no exponent to exclude
  CHECK_NOTHROW(AlgebraContext(p2, NormKind::INorm).require_structure());
}

TEST_CASE("hermitian elements are the real unit functions") {
  Groupoid z2 = group_cyclic(2);
  for (NormKind kind : {NormKind::Fp, NormKind::SymFp, NormKind::INorm}) {
    AlgebraContext ctx(z2, kind, 3.0);
    CHECK(is_hermitian(ctx, unit_element(z2)).verdict());
    CHECK_FALSE(is_hermitian(ctx, Complex(0, 1) * unit_element(z2)).verdict());
    CHECK_FALSE(is_hermitian(ctx, delta(z2, 1)).verdict());
  }

  Groupoid p3 = pair_groupoid(3);
  AlgebraContext ctx(p3, NormKind::Fp, 1.5);
  std::mt19937_64 rng(67);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    AlgElem f(p3);
    for (int u : p3.units()) f[u] = Complex(gauss(rng), 0);
    HermitianEvidence ev = is_hermitian(ctx, f);
    CHECK(ev.structural);
    CHECK(ev.numerical);
  }
}

TEST_CASE("core has unit-space dimension and C*-identity") {
  for (const auto& e : catalog()) {
    AlgebraContext ctx(e.groupoid, NormKind::Fp, 1.5);
    CHECK(core(ctx).dimension() == e.groupoid.num_units());
  }

  Groupoid p3 = pair_groupoid(3);
  AlgebraContext ctx(p3, NormKind::Fp, 1.5, 5);
  std::mt19937_64 rng(71);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    AlgElem x(p3), y(p3);
    for (int u : p3.units()) {
      x[u] = Complex(gauss(rng), gauss(rng));
      y[u] = Complex(gauss(rng), gauss(rng));
    }
    double n = ctx.norm(x);
    CHECK(ctx.norm(convolve(p3, involution(p3, x), x)) ==
          Catch::Approx(n * n).margin(1e-6 * (1 + n * n)));
    CHECK(approx_equal(convolve(p3, x, y), convolve(p3, y, x)));
    // restriction to the unit space is faithful on the core
    auto r = core_restrict(ctx, x);
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i] == x[p3.units()[i]]);
  }
}

TEST_CASE("hermitian idempotents on units are ultrahermitian") {
  Groupoid p2 = pair_groupoid(2);
  AlgebraContext ctx(p2, NormKind::Fp, 3.0, 5);
  const auto& us = p2.units();
  for (std::uint64_t mask = 0; mask < (1ull << us.size()); ++mask) {
    AlgElem e(p2);
    for (std::size_t i = 0; i < us.size(); ++i)
      if (mask >> i & 1) e[us[i]] = 1;
    UltrahermitianEvidence ev = is_ultrahermitian_idempotent(ctx, e, 50, 77 + mask);
    CHECK(ev.structural);
    CHECK(ev.sampled);
  }
}

TEST_CASE("a non-hermitian idempotent fails the ultrahermitian bound") {
  Groupoid p2 = pair_groupoid(2);
  AlgebraContext ctx(p2, NormKind::Fp, 3.0, 5);
  AlgElem e = delta(p2, arrow_by_name(p2, "(1,1)")) +
              delta(p2, arrow_by_name(p2, "(1,2)"));
  REQUIRE(approx_equal(convolve(p2, e, e), e));
  UltrahermitianEvidence ev = is_ultrahermitian_idempotent(ctx, e, 2000, 83);
  CHECK_FALSE(ev.structural);
  CHECK_FALSE(ev.sampled);  // a violating contraction pair exists and is found
  CHECK(ev.worst_compression_norm > 1 + 1e-3);
}

TEST_CASE("ultrahermitian test rejects non-idempotents") {
  Groupoid p2 = pair_groupoid(2);
  AlgebraContext ctx(p2, NormKind::Fp, 1.5);
  CHECK_THROWS_AS(
      is_ultrahermitian_idempotent(ctx, Complex(0.5, 0) * unit_element(p2), 5, 1),
      std::invalid_argument);
}

TEST_CASE("Moore-Penrose verification") {
  Groupoid p2 = pair_groupoid(2);
  AlgebraContext ctx(p2, NormKind::Fp, 1.5, 5);
  int a12 = arrow_by_name(p2, "(1,2)");
  Bisection b{a12};
  AlgElem ib = indicator(p2, b), ibi = indicator(p2, bisection_inv(p2, b));
  CHECK(verify_mp(ctx, ib, ibi));
  CHECK_FALSE(verify_mp(ctx, ib, ib));  // B*B is empty, a != aba
  // generalized inverse with a non-hermitian product fails
  AlgElem e = delta(p2, arrow_by_name(p2, "(1,1)")) + delta(p2, a12);
  CHECK(approx_equal(convolve(p2, convolve(p2, e, e), e), e));
  CHECK_FALSE(verify_mp(ctx, e, e));
}

TEST_CASE("closed-form Moore-Penrose inverse") {
  Groupoid p3 = pair_groupoid(3);
  AlgebraContext ctx(p3, NormKind::Fp, 1.5, 5);
  SECTION("bisection indicators") {
    for (const auto& b : enumerate_bisections(p3)) {
      AlgElem ib = indicator(p3, b);
      std::optional<AlgElem> dag = mp_inverse(ctx, ib);
      REQUIRE(dag);
      CHECK(approx_equal(*dag, indicator(p3, bisection_inv(p3, b))));
      AlgElem src(p3), rng_e(p3);
      for (int u : source_set(p3, b)) src[u] = 1;
      for (int u : range_set(p3, b)) rng_e[u] = 1;
      CHECK(approx_equal(convolve(p3, *dag, ib), src));
      CHECK(approx_equal(convolve(p3, ib, *dag), rng_e));
    }
  }
  SECTION("zero and scalings") {
    CHECK(approx_equal(*mp_inverse(ctx, AlgElem(p3)), AlgElem(p3)));
    Groupoid z2 = group_cyclic(2);
    AlgebraContext cz(z2, NormKind::Fp, 1.5, 5);
    AlgElem a = Complex(2, 0) * delta(z2, 1);
    std::optional<AlgElem> dag = mp_inverse(cz, a);
    REQUIRE(dag);
    CHECK(approx_equal(*dag, Complex(0.5, 0) * delta(z2, 1)));
    CHECK(cz.norm(*dag) == Catch::Approx(0.5).margin(1e-9));
  }
  SECTION("non-bisection supports are not found by the closed form") {
    AlgElem f(p3);
    f[arrow_by_name(p3, "(1,1)")] = 1;
    f[arrow_by_name(p3, "(1,2)")] = 1;
    CHECK_FALSE(mp_inverse(ctx, f).has_value());
  }
}

TEST_CASE("MP inverse is unique: closed form agrees with the linear-solve oracle") {
  Groupoid p2 = pair_groupoid(2);
  AlgebraContext ctx(p2, NormKind::Fp, 1.5, 5);
  std::mt19937_64 rng(89);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto bs = enumerate_bisections(p2);
  for (const auto& b : bs) {
    if (b.empty()) continue;
    AlgElem a(p2);
    for (int x : b) a[x] = std::polar(0.5 + std::abs(gauss(rng)), gauss(rng));
    std::optional<AlgElem> closed = mp_inverse(ctx, a);
    std::optional<AlgElem> searched = mp_inverse_oracle(p2, a);
    REQUIRE(closed);
    REQUIRE(searched);
    CHECK(approx_equal(*closed, *searched, 1e-6));
  }
}

TEST_CASE("MP-partial isometry classification") {
  Groupoid p2 = pair_groupoid(2);
  AlgebraContext ctx(p2, NormKind::Fp, 1.5, 5);
  std::mt19937_64 rng(97);
  auto bs = enumerate_bisections(p2);
  for (const auto& b : bs) {
    AlgElem ib = indicator(p2, b);
    auto dec = is_mp_partial_isometry(ctx, ib);
    REQUIRE(dec);
    CHECK(dec->bisection == b);
    for (Complex z : dec->phase) CHECK(std::abs(z - Complex(1, 0)) < 1e-12);

    if (!b.empty()) {
      CHECK_FALSE(is_mp_partial_isometry(ctx, Complex(0.5, 0) * ib).has_value());
      AlgElem ph = random_phase_indicator(p2, b, rng);
      auto pdec = is_mp_partial_isometry(ctx, ph);
      REQUIRE(pdec);
      CHECK(pdec->bisection == b);
      for (std::size_t i = 0; i < pdec->bisection.size(); ++i)
        CHECK(std::abs(pdec->phase[i] - ph[pdec->bisection[i]]) < 1e-12);
    }
  }
}

TEST_CASE("classification verdicts agree between Fp and SymFp contexts") {
  Groupoid p2 = pair_groupoid(2);
  std::mt19937_64 rng(101);
  for (double p : {1.0, 1.5, 3.0}) {
    AlgebraContext fp(p2, NormKind::Fp, p, 5), sym(p2, NormKind::SymFp, p, 5);
    AlgebraContext inorm(p2, NormKind::INorm, 1.0, 5);
    for (const auto& b : enumerate_bisections(p2)) {
      for (const AlgElem& a :
           {indicator(p2, b), random_phase_indicator(p2, b, rng),
            Complex(0.7, 0) * indicator(p2, b)}) {
        bool vf = is_mp_partial_isometry(fp, a).has_value();
        bool vs = is_mp_partial_isometry(sym, a).has_value();
        CHECK(vf == vs);
        if (p == 1.0) CHECK(vf == is_mp_partial_isometry(inorm, a).has_value());
      }
    }
  }
}

TEST_CASE("homotopy representatives and paths") {
  Groupoid p3 = pair_groupoid(3);
  AlgebraContext ctx(p3, NormKind::Fp, 1.5, 5);
  std::mt19937_64 rng(103);
  auto bs = enumerate_bisections(p3);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(bs.size()) - 1);

  SECTION("class map is multiplicative and dagger-compatible") {
    for (int t = 0; t < 25; ++t) {
      const Bisection &a = bs[pick(rng)], &b = bs[pick(rng)];
      AlgElem fa = random_phase_indicator(p3, a, rng);
      AlgElem fb = random_phase_indicator(p3, b, rng);
      CHECK(homotopy_rep(ctx, convolve(p3, fa, fb)) == bisection_mul(p3, a, b));
      CHECK(homotopy_rep(ctx, *mp_inverse(ctx, fa)) == bisection_inv(p3, a));
    }
  }
  SECTION("indicator paths are constant") {
    Bisection b = bs[5];
    auto path = homotopy_path(ctx, indicator(p3, b), 4);
    for (const auto& h : path) CHECK(approx_equal(h, indicator(p3, b)));
  }
  SECTION("negated indicator travels through unimodular phases") {
    Groupoid p2 = pair_groupoid(2);
    AlgebraContext c2(p2, NormKind::Fp, 1.5, 5);
    Bisection b{arrow_by_name(p2, "(1,2)"), arrow_by_name(p2, "(2,1)")};
    AlgElem a = Complex(-1, 0) * indicator(p2, b);
    auto path = homotopy_path(c2, a, 16);
    REQUIRE(path.size() == 17);
    CHECK(approx_equal(path.front(), a));
    CHECK(approx_equal(path.back(), indicator(p2, b)));
    double pi = 3.141592653589793;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      CHECK(is_mp_partial_isometry(c2, path[k]).has_value());
      CHECK(c2.norm(path[k + 1] - path[k]) <= pi / 16 + 1e-9);
    }
  }
}

TEST_CASE("PI_MP semigroup checks on P2") {
  Groupoid p2 = pair_groupoid(2);
  AlgebraContext ctx(p2, NormKind::Fp, 1.5, 5);
  auto bs = enumerate_bisections(p2);

  SECTION("plain indicators (includes the zero element)") {
    std::vector<AlgElem> sample;
    for (const auto& b : bs) sample.push_back(indicator(p2, b));
    PiMpReport rep = pi_mp_semigroup_check(ctx, sample);
    CHECK(rep.products_closed);
    CHECK(rep.dagger_antimultiplicative);
    CHECK(rep.conjugated_idempotents_ok);
    CHECK(rep.members_normalize);
    CHECK(rep.normalizer_is_inverse_semigroup);
    CHECK(rep.normalizer_size == 7);  // the indicators themselves
    // zero absorbs
    AlgElem zero(p2);
    for (const auto& a : sample)
      CHECK(approx_equal(convolve(p2, zero, a), zero));
  }
  SECTION("random phase decorations") {
    std::mt19937_64 rng(107);
    std::vector<AlgElem> sample;
    for (const auto& b : bs) sample.push_back(random_phase_indicator(p2, b, rng));
    PiMpReport rep = pi_mp_semigroup_check(ctx, sample);
    CHECK(rep.products_closed);
    CHECK(rep.dagger_antimultiplicative);
    CHECK(rep.conjugated_idempotents_ok);
    CHECK(rep.members_normalize);
    CHECK(rep.normalizer_is_inverse_semigroup);
  }
}

TEST_CASE("normalizer semigroup examples") {
  Groupoid p2 = pair_groupoid(2);
  AlgebraContext ctx(p2, NormKind::Fp, 1.5, 5);
  const auto& us = p2.units();
  std::vector<AlgElem> family;
  for (std::uint64_t mask = 0; mask < (1ull << us.size()); ++mask) {
    AlgElem e(p2);
    for (std::size_t i = 0; i < us.size(); ++i)
      if (mask >> i & 1) e[us[i]] = 1;
    family.push_back(e);
  }
  SECTION("all bisection indicators normalize the full unit family") {
    std::vector<AlgElem> elems;
    for (const auto& b : enumerate_bisections(p2)) elems.push_back(indicator(p2, b));
    InvSemigroup n = normalizer_semigroup(ctx, elems, family);
    CHECK(n.size() == 7);
    CHECK(n.verify().empty());
  }
  SECTION("phase multiples of point masses normalize {0, 1} in a group") {
    Groupoid z2 = group_cyclic(2);
    AlgebraContext cz(z2, NormKind::Fp, 1.5, 5);
    std::vector<AlgElem> fam{AlgElem(z2), unit_element(z2)};
    std::mt19937_64 rng(113);
    std::uniform_real_distribution<double> angle(-3.0, 3.0);
    for (int t = 0; t < 20; ++t) {
      for (int x = 0; x < 2; ++x) {
        AlgElem a(z2);
        a[x] = std::polar(1.0, angle(rng));
        CHECK(normalizes(cz, a, fam));
      }
    }
  }
  SECTION("empty sample gives the empty semigroup") {
    InvSemigroup n = normalizer_semigroup(ctx, {}, family);
    CHECK(n.size() == 0);
    CHECK(n.verify().empty());
  }
}

TEST_CASE("S_pi is the bisection semigroup") {
  std::mt19937_64 rng(109);
  struct Case {
    Groupoid g;
    int size;
  };
  Case cases[] = {{pair_groupoid(2), 7}, {group_cyclic(2), 3}, {pair_groupoid(3), 34}};
  for (auto& c : cases) {
    AlgebraContext ctx(c.g, NormKind::Fp, 1.5, 5);
    SpiResult spi = spi_semigroup(ctx);
    CHECK(spi.semigroup.sg.size() == c.size);
    CHECK(spi.section_verified);
    CHECK(spi.multiplicativity_verified);
    CHECK(spi.semigroup.sg.verify().empty());
  }
  // P3 idempotents are the 8 unit subsets
  AlgebraContext ctx(cases[2].g, NormKind::Fp, 1.5, 5);
  SpiResult spi = spi_semigroup(ctx);
  CHECK(spi.semigroup.sg.idempotents().size() == 8);
}
