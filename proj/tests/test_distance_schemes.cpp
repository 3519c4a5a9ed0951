#include <doctest.h>

#include "distance_oracle.hpp"
#include "qbound/distance_schemes.hpp"
#include "qbound/errors.hpp"
#include "qbound/families.hpp"

using namespace qbound;

TEST_CASE("ordered-search scheme at n = 4") {
  const FunctionTable f = ordered_search(4);
  const DistanceScheme s = builtin_scheme("ordered-search", 4);
  CHECK(s.w_ordered() == Rational(26, 3));
  CHECK(s.w_unordered() == Rational(13, 3));
  const LoadTables l = loads(f, s);
  CHECK(l.max_rl == 1);
  CHECK(l.max_ll == 1);
  for (const auto& [key, v] : l.rl) CHECK(v == 1);
  const DistanceBounds b = distance_bounds(f, s);
  CHECK(*b.randomized.exact == Rational(13, 12));
  CHECK(*b.quantum.exact == Rational(169, 144));
  CHECK(b.quantum.value == doctest::Approx(13.0 / 12.0));
}

TEST_CASE("ordered-search closed form and metric structure") {
  for (unsigned n = 2; n <= 64; ++n) {
    const FunctionTable f = ordered_search(n);
    const DistanceScheme s = builtin_scheme("ordered-search", n);
    CHECK(s.w_unordered() == test::ordered_search_w_oracle(n));
    const DistanceBounds b = distance_bounds(f, s);
    CHECK(*b.randomized.exact == test::ordered_search_closed_form(n));
    CHECK(b.loads.max_product == 1);
  }
  // D(x(a), x(c)) = D(x(a), x(b)) + D(x(b), x(c)).
  const DistanceScheme s = builtin_scheme("ordered-search", 12);
  std::map<std::pair<Index, Index>, unsigned> d;
  for (const auto& e : s.entries()) d[{e.x, e.y}] = e.d;
  for (Index a = 0; a < 12; ++a) {
    for (Index b = a + 1; b < 12; ++b) {
      for (Index c = b + 1; c < 12; ++c) CHECK(d[{a, c}] == d[{a, b}] + d[{b, c}]);
    }
  }
}

TEST_CASE("ordered-search n = 1 is empty") {
  const FunctionTable f = ordered_search(1);
  const DistanceScheme s = builtin_scheme("ordered-search", 1);
  CHECK(s.empty());
  CHECK(s.w_ordered() == 0);
  CHECK(loads(f, s).rl.empty());
  CHECK_THROWS_AS(distance_bounds(f, s), DomainError);
}

TEST_CASE("sorting scheme matches the enumeration oracle") {
  for (unsigned n = 3; n <= 5; ++n) {
    CAPTURE(n);
    const FunctionTable f = sorting(n);
    const DistanceScheme s = builtin_scheme("sorting", n);
    const test::OracleScheme o = test::sorting_oracle(n);
    CHECK(s.w_unordered() == o.w_unordered);
    const LoadTables l = loads(f, s);
    CHECK(l.max_rl == 2);
    CHECK(l.max_ll == 2);
    CHECK(o.min_load == 2);
    CHECK(o.max_load == 2);
    // Every supported triple has RL = LL = 2.
    for (const auto& e : s.entries()) {
      for (Position i : f.diff(e.x, e.y)) {
        CHECK(l.rl.at({e.x, i}) == 2);
        CHECK(l.ll.at({e.y, i}) == 2);
      }
    }
    const DistanceBounds b = distance_bounds(f, s);
    const Rational scale = o.w_unordered / Rational(o.domain);
    CHECK(*b.quantum.exact == scale * scale / Rational(o.max_product));
    CHECK(*b.randomized.exact == scale / 2);
  }
  const DistanceBounds b3 = distance_bounds(sorting(3), builtin_scheme("sorting", 3));
  CHECK(b3.w_unordered == 15);
  CHECK(*b3.quantum.exact == Rational(25, 16));
  CHECK(b3.quantum.value == doctest::Approx(1.25));
}

TEST_CASE("sorting neighbours: per-sigma inverse weight at n = 3") {
  const DistanceScheme s = builtin_scheme("sorting", 3);
  // 3 defining neighbours per sigma with inverse weights 1 + 1 + 1/2.
  CHECK(s.entries().size() == 2 * 6 * 3);
  CHECK(s.w_ordered() == Rational(2 * 6 * 5, 2));
}

TEST_CASE("distance scheme validation") {
  const FunctionTable f = ordered_search(3);
  CHECK_THROWS_AS(DistanceScheme(3, {{0, 0, 1}}), DomainError);
  CHECK_THROWS_AS(DistanceScheme(3, {{0, 7, 1}}), DomainError);
  CHECK(DistanceScheme(3, {{0, 1, 0}}).empty());
  CHECK_THROWS_AS(builtin_scheme("nope", 3), DomainError);

  std::vector<FunctionTable::Entry> es{{InputString::parse("00"), "a"}, {InputString::parse("01"), "a"}};
  const FunctionTable same(Alphabet{2}, 2, es);
  CHECK_FALSE(validate_distance_scheme(same, DistanceScheme(2, {{0, 1, 1}})).valid());
  CHECK_THROWS_AS(distance_bounds(same, DistanceScheme(2, {{0, 1, 1}})), InvalidSchemeError);
}
