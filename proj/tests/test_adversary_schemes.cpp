#include <doctest.h>

#include <random>

#include "qbound/adversary_schemes.hpp"
#include "qbound/families.hpp"
#include "test_support.hpp"

using namespace qbound;

namespace {

Index idx(const FunctionTable& f, const char* s) { return f.index_of(InputString::parse(s)); }

// Weighted-bound oracle: direct minimization over the listed triples.
Rational oracle_weighted(const FunctionTable& f, const WeightScheme& s, Model model) {
  std::vector<Rational> wt(f.size());
  for (Index x = 0; x < f.size(); ++x) {
    for (Index y = 0; y < f.size(); ++y) wt[x] += s.weight(x, y);
  }
  auto v = [&](Index x, Position i) {
    Rational sum = 0;
    for (Index y = 0; y < f.size(); ++y) sum += s.weight_prime(x, y, i);
    return sum;
  };
  std::optional<Rational> best;
  for (Index x = 0; x < f.size(); ++x) {
    for (Index y = 0; y < f.size(); ++y) {
      if (s.weight(x, y) == 0) continue;
      for (Position i = 1; i <= f.n(); ++i) {
        if (f.input(x).at(i) == f.input(y).at(i)) continue;
        const Rational k = model == Model::quantum ? Rational(wt[x] * wt[y] / (v(x, i) * v(y, i)))
                                                   : std::max(Rational(wt[x] / v(x, i)), Rational(wt[y] / v(y, i)));
        if (!best || k < *best) best = k;
      }
    }
  }
  return *best;
}

}  // namespace

TEST_CASE("unweighted bound on OR and parity") {
  const FunctionTable f = or_promise(4);
  Relation r;
  for (Position j = 1; j <= 4; ++j) r.pairs.emplace_back(idx(f, "0000"), f.index_of(InputString::unit(4, j)));
  const UnweightedBound b = unweighted_bound(f, r);
  CHECK(b.m == 4);
  CHECK(b.m_prime == 1);
  CHECK(b.l == 1);
  CHECK(b.l_prime == 1);
  CHECK(b.value.value == doctest::Approx(2.0));
  CHECK(*b.value.exact == Rational(4));

  const FunctionTable parity = test::total_boolean(2, 0b0110);
  Relation ham;
  for (Index x = 0; x < 4; ++x) {
    for (Index y = 0; y < 4; ++y) {
      if (parity.output(x) == "0" && parity.output(y) == "1") ham.pairs.emplace_back(x, y);
    }
  }
  const UnweightedBound pb = unweighted_bound(parity, ham);
  CHECK(pb.m == 2);
  CHECK(pb.m_prime == 2);
  CHECK(pb.l == 1);
  CHECK(pb.l_prime == 1);
  CHECK(pb.value.value == doctest::Approx(2.0));

  CHECK_THROWS_AS(unweighted_bound(f, Relation{}), DomainError);
  CHECK_THROWS_AS(unweighted_bound(f, Relation{{{idx(f, "1000"), idx(f, "0100")}}}), DomainError);
}

TEST_CASE("weight-scheme validation") {
  const FunctionTable f = or_promise(4);
  const WeightScheme unit = WeightScheme::unit(f);
  CHECK(validate_weight_scheme(f, unit, Model::quantum).valid());
  CHECK(validate_weight_scheme(f, unit, Model::randomized).valid());

  WeightScheme broken = unit;
  broken.wprime.erase(TripleKey{idx(f, "0000"), idx(f, "1000"), 1});
  const ValidationVerdict v = validate_weight_scheme(f, broken, Model::quantum);
  REQUIRE_FALSE(v.valid());
  bool found = false;
  for (const auto& viol : v.violations) {
    if (viol.kind == "quantum-validity" && viol.i == Position{1}) found = true;
  }
  CHECK(found);
  CHECK(v.convention.find("w'") != std::string::npos);

  WeightScheme negative = unit;
  negative.w[{idx(f, "0000"), idx(f, "0100")}] = -1;
  bool neg = false;
  for (const auto& viol : validate_weight_scheme(f, negative, Model::quantum).violations) neg |= viol.kind == "negative-w";
  CHECK(neg);

  WeightScheme same_output = unit;
  same_output.w[{idx(f, "1000"), idx(f, "0100")}] = 1;
  same_output.w[{idx(f, "0100"), idx(f, "1000")}] = 1;
  CHECK_FALSE(validate_weight_scheme(f, same_output, Model::randomized).valid());
  CHECK_THROWS_AS(weighted_bound(f, broken, Model::quantum), InvalidSchemeError);
}

TEST_CASE("weighted bound on OR") {
  const FunctionTable f = or_promise(4);
  const WeightScheme s = WeightScheme::unit(f);
  const WeightedBound q = weighted_bound(f, s, Model::quantum);
  CHECK(q.value.value == doctest::Approx(2.0));
  CHECK(q.value.exactness == Exactness::radical_of_rational);
  CHECK(*q.value.exact == Rational(4));
  CHECK(q.argmin.size() == 8);  // (0000, e_j, j) and (e_j, 0000, j)
  const WeightedBound r = weighted_bound(f, s, Model::randomized);
  CHECK(*r.value.exact == Rational(4));
  CHECK(r.value.exactness == Exactness::exact_rational);

  CHECK_THROWS_AS(weighted_bound(f, WeightScheme{}, Model::quantum), DomainError);

  // Scaling leaves value and argmin set unchanged.
  const WeightedBound scaled = weighted_bound(f, s.scaled(Rational(7, 3)), Model::quantum);
  CHECK(*scaled.value.exact == *q.value.exact);
  CHECK(scaled.argmin == q.argmin);
}

TEST_CASE("OR2 scheme to distributions") {
  const FunctionTable f = or_promise(2);
  const WeightScheme s = WeightScheme::unit(f);
  CHECK(weight_totals(f, s).total == 4);
  const ExactProbabilityScheme ps = scheme_to_distributions(f, s);
  CHECK(ps.q.size() == 4);
  for (const auto& [k, v] : ps.q) CHECK(v == Rational(1, 4));
  CHECK(ps.p[idx(f, "00")] == Rational(1, 2));
  CHECK(ps.p[idx(f, "01")] == Rational(1, 4));
  CHECK(ps.p[idx(f, "10")] == Rational(1, 4));
  CHECK(ps.pprime_at(idx(f, "00"), 2, idx(f, "01")) == 1);
  CHECK(validate_probability_scheme(f, ps).valid());

  const SchemeBound q = probability_scheme_bound(f, ps, Model::quantum);
  CHECK(*q.value.exact == Rational(2));
  CHECK(q.value.value == doctest::Approx(std::sqrt(2.0)));
  const SchemeBound r = probability_scheme_bound(f, ps, Model::randomized);
  CHECK(*r.value.exact == Rational(2));

  ExactProbabilityScheme bad = ps;
  bad.pprime.erase({idx(f, "00"), 2});
  bad.pprime[{idx(f, "00"), 2}][idx(f, "00")] = 1;
  CHECK_THROWS_AS(probability_scheme_bound(f, bad, Model::quantum), InvalidSchemeError);
}

TEST_CASE("weighted bound agrees with the oracle on random schemes") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const FunctionTable f = test::random_function(3, rng);
    if (!test::has_distinct_outputs(f)) continue;
    const WeightScheme tight = test::random_tight_scheme(f, rng);
    const WeightScheme dom = test::random_dominating_scheme(f, rng);
    if (tight.w.empty() || dom.w.empty()) continue;
    for (Model m : {Model::quantum, Model::randomized}) {
      const WeightScheme& s = m == Model::quantum ? tight : dom;
      REQUIRE(validate_weight_scheme(f, s, m).valid());
      CHECK(*weighted_bound(f, s, m).value.exact == oracle_weighted(f, s, m));
    }
  }
}

TEST_CASE("generic scheme bound equals the weighted bound on tight schemes") {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const FunctionTable f = test::random_function(3, rng);
    if (!test::has_distinct_outputs(f)) continue;
    const WeightScheme s = test::random_tight_scheme(f, rng);
    if (s.w.empty()) continue;
    const ExactProbabilityScheme ps = scheme_to_distributions(f, s);
    CHECK(validate_probability_scheme(f, ps).valid());
    const SchemeBound g = probability_scheme_bound(f, ps, Model::quantum);
    const WeightedBound w = weighted_bound(f, s, Model::quantum);
    CHECK(*g.value.exact == *w.value.exact);
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("unit schemes dominate the unweighted bound") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const FunctionTable f = test::random_function(3, rng);
    if (!test::has_distinct_outputs(f)) continue;
    const Relation r = default_relation(f);
    const UnweightedBound u = unweighted_bound(f, r);
    const WeightedBound w = weighted_bound(f, WeightScheme::unit_on(f, r), Model::quantum);
    CHECK(*w.value.exact >= *u.value.exact);
  }
  const FunctionTable f = or_promise(4);
  CHECK(*weighted_bound(f, WeightScheme::unit_on(f, default_relation(f)), Model::quantum).value.exact ==
        *unweighted_bound(f, default_relation(f)).value.exact);
}

TEST_CASE("bounds ignore output relabelling") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const FunctionTable f = test::random_function(3, rng);
    if (!test::has_distinct_outputs(f)) continue;
    std::vector<FunctionTable::Entry> relabelled;
    for (Index k = 0; k < f.size(); ++k) relabelled.push_back({f.input(k), "L" + f.output(k)});
    const FunctionTable g(f.alphabet(), f.n(), relabelled);
    const WeightScheme s = test::random_tight_scheme(f, rng);
    if (s.w.empty()) continue;
    CHECK(*weighted_bound(f, s, Model::quantum).value.exact == *weighted_bound(g, s, Model::quantum).value.exact);
    const WeightScheme d = test::random_dominating_scheme(f, rng);
    if (d.w.empty()) continue;
    CHECK(*weighted_bound(f, d, Model::randomized).value.exact ==
          *weighted_bound(g, d, Model::randomized).value.exact);
  }
}
