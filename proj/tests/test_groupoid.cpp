#include <catch2/catch_amalgamated.hpp>

#include "gpdalg/groupoid.hpp"
#include "gpdalg/bisection.hpp"
#include "gpdalg/groupoid_iso.hpp"
#include "gpdalg/json_io.hpp"
#include "test_support.hpp"

using namespace gpdalg;

namespace {
int arrow_by_name(const Groupoid& g, const std::string& name) {
  for (int x = 0; x < g.num_arrows(); ++x)
    if (g.name(x) == name) return x;
  FAIL("no arrow named " + name);
  return -1;
}
}  // namespace

TEST_CASE("pair groupoid P2 satisfies the axioms") {
  Groupoid p2 = pair_groupoid(2);
  CHECK(p2.num_arrows() == 4);
  CHECK(p2.num_units() == 2);
  CHECK(p2.validate().empty());
}

TEST_CASE("breaking the inverse table is detected") {
  Groupoid p2 = pair_groupoid(2);
  const int n = p2.num_arrows();
  std::vector<int> src(n), rng(n), inv(n), comp(n * n);
  for (int x = 0; x < n; ++x) {
    src[x] = p2.source(x);
    rng[x] = p2.range(x);
    inv[x] = p2.inv(x);
    for (int y = 0; y < n; ++y) comp[x * n + y] = p2.compose(x, y);
  }
  int a12 = arrow_by_name(p2, "(1,2)");
  inv[a12] = a12;  // (1,2) is not its own inverse
  Groupoid broken(p2.arrow_names(), p2.units(), src, rng, comp, inv);
  auto violations = broken.validate();
  REQUIRE_FALSE(violations.empty());
  bool found = false;
  for (const auto& v : violations)
    if (v.axiom == "invx-x-source" || v.axiom == "x-invx-range" ||
        v.axiom == "inv-swaps-source-range")
      found = true;
  CHECK(found);
}

TEST_CASE("cyclic group Z_4 satisfies the axioms") {
  CHECK(group_cyclic(4).validate().empty());
}

TEST_CASE("all builtins validate") {
  for (const auto& e : catalog()) {
    INFO(e.name);
    CHECK(e.groupoid.validate().empty());
  }
}

TEST_CASE("bisection counts: P2, Z_2, P3") {
  Groupoid p2 = pair_groupoid(2);
  auto bs2 = enumerate_bisections(p2);
  REQUIRE(bs2.size() == 7);
  // empty, four singletons, the two 2-element ones
  int singles = 0, pairs = 0, empties = 0;
  for (const auto& b : bs2) {
    if (b.empty()) ++empties;
    if (b.size() == 1) ++singles;
    if (b.size() == 2) ++pairs;
  }
  CHECK(empties == 1);
  CHECK(singles == 4);
  CHECK(pairs == 2);

  Groupoid z2 = group_cyclic(2);
  auto bsz = enumerate_bisections(z2);
  REQUIRE(bsz.size() == 3);  // empty set and the two singletons
  for (const auto& b : bsz) CHECK(b.size() <= 1);

  CHECK(enumerate_bisections(pair_groupoid(3)).size() == 34);
}

TEST_CASE("bisection enumeration respects the work bound") {
  CHECK_THROWS_AS(enumerate_bisections(pair_groupoid(3), 10), WorkBoundExceeded);
}

TEST_CASE("bisection product and inverse on P2") {
  Groupoid p2 = pair_groupoid(2);
  int a12 = arrow_by_name(p2, "(1,2)"), a21 = arrow_by_name(p2, "(2,1)");
  int a11 = arrow_by_name(p2, "(1,1)");
  CHECK(bisection_mul(p2, {a12}, {a21}) == Bisection{a11});
  CHECK(bisection_mul(p2, {a12}, {a12}).empty());
  CHECK(bisection_inv(p2, {a12}) == Bisection{a21});
  CHECK(bisection_inv(p2, {}).empty());
}

TEST_CASE("bisection semigroup laws on P3") {
  Groupoid p3 = pair_groupoid(3);
  auto bs = enumerate_bisections(p3);
  Bisection identity(p3.units().begin(), p3.units().end());

  for (const auto& a : bs) {
    CHECK(bisection_mul(p3, identity, a) == a);
    CHECK(bisection_mul(p3, a, identity) == a);
    Bisection ai = bisection_inv(p3, a);
    // A^-1 A = identity on s(A); A A^-1 A = A
    CHECK(bisection_mul(p3, ai, a) == source_set(p3, a));
    CHECK(bisection_mul(p3, bisection_mul(p3, a, ai), a) == a);
  }

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(bs.size()) - 1);
  for (int t = 0; t < 300; ++t) {
    const Bisection &a = bs[pick(rng)], &b = bs[pick(rng)], &c = bs[pick(rng)];
    CHECK(bisection_mul(p3, bisection_mul(p3, a, b), c) ==
          bisection_mul(p3, a, bisection_mul(p3, b, c)));
    Bisection ab = bisection_mul(p3, a, b);
    // s(AB) within s(B), r(AB) within r(A)
    auto sb = source_set(p3, b), ra = range_set(p3, a);
    for (int u : source_set(p3, ab))
      CHECK(std::find(sb.begin(), sb.end(), u) != sb.end());
    for (int u : range_set(p3, ab))
      CHECK(std::find(ra.begin(), ra.end(), u) != ra.end());
  }
}

TEST_CASE("isomorphism: relabeled P2") {
  Groupoid p2 = pair_groupoid(2);
  Groupoid q = gpdalg::testing::permuted_groupoid(p2, {2, 0, 3, 1});
  REQUIRE(q.validate().empty());
  IsoResult iso = groupoid_isomorphic(p2, q);
  REQUIRE(iso.status == IsoResult::Found);
  CHECK(verify_isomorphism(p2, q, iso.map));
}

TEST_CASE("isomorphism: Z_4 vs Klein four-group") {
  IsoResult iso = groupoid_isomorphic(group_cyclic(4), group_klein());
  CHECK(iso.status == IsoResult::NotIsomorphic);
}

TEST_CASE("isomorphism: unit counts differ") {
  CHECK(groupoid_isomorphic(group_cyclic(2), pair_groupoid(2)).status ==
        IsoResult::NotIsomorphic);
}

TEST_CASE("every catalog groupoid is isomorphic to itself") {
  for (const auto& e : catalog()) {
    INFO(e.name);
    IsoResult iso = groupoid_isomorphic(e.groupoid, e.groupoid);
    REQUIRE(iso.status == IsoResult::Found);
    CHECK(verify_isomorphism(e.groupoid, e.groupoid, iso.map));
  }
}

TEST_CASE("groupoid JSON round trip") {
  for (const auto& e : catalog()) {
    INFO(e.name);
    Groupoid back = groupoid_from_json(groupoid_to_json(e.groupoid));
    REQUIRE(back.validate().empty());
    IsoResult iso = groupoid_isomorphic(e.groupoid, back);
    CHECK(iso.status == IsoResult::Found);
  }
}

TEST_CASE("groupoid JSON rejects malformed input") {
  json j = groupoid_to_json(pair_groupoid(2));
  SECTION("missing format") {
    j.erase("format");
    CHECK_THROWS_AS(groupoid_from_json(j), ParseError);
  }
  SECTION("unknown arrow in compose") {
    j["compose"].push_back({"(1,1)", "(1,1)", "bogus"});
    CHECK_THROWS_AS(groupoid_from_json(j), ParseError);
  }
  SECTION("incomplete compose table breaks inverse derivation") {
    json comp = json::array();
    for (const auto& t : j["compose"])
      if (t[0] != "(1,2)") comp.push_back(t);
    j["compose"] = comp;
    CHECK_THROWS_AS(groupoid_from_json(j), ParseError);
  }
}

TEST_CASE("action groupoid rejects non-actions") {
  // the generator of Z_2 acting as a 3-cycle: not a homomorphism
  CHECK_THROWS_AS(action_groupoid(group_cyclic(2), {{0, 1, 2}, {1, 2, 0}}),
                  std::invalid_argument);
  // identity must act trivially
  CHECK_THROWS_AS(action_groupoid(group_cyclic(2), {{1, 0}, {0, 1}}),
                  std::invalid_argument);
}
