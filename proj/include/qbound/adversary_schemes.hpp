#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qbound/errors.hpp"
#include "qbound/function_table.hpp"
#include "qbound/rational.hpp"

namespace qbound {

enum class Model { quantum, randomized };

std::string_view to_string(Model m);
Model parse_model(std::string_view text);

struct PairKey {
  Index x;
  Index y;
  friend auto operator<=>(const PairKey&, const PairKey&) = default;
};

struct TripleKey {
  Index x;
  Index y;
  Position i;
  friend auto operator<=>(const TripleKey&, const TripleKey&) = default;
};

/// A (x, y, i) triple that attains a bound's minimum.
struct Witness {
  Index x = 0;
  Index y = 0;
  Position i = 0;
  friend bool operator==(const Witness&, const Witness&) = default;
};

// ---------------------------------------------------------------------------
// Unweighted relation bound

/// Ordered pairs (x on the X side, y on the Y side) of domain indices.
struct Relation {
  std::vector<std::pair<Index, Index>> pairs;
};

/// Boolean f: every (x, y) with f(x) = 0, f(y) = 1. Otherwise every
/// output-differing pair with x before y in domain order.
Relation default_relation(const FunctionTable& f);

struct UnweightedBound {
  BoundValue value;  // sqrt(m m' / (l l'))
  std::size_t m = 0;
  std::size_t m_prime = 0;
  std::size_t l = 0;
  std::size_t l_prime = 0;
};

UnweightedBound unweighted_bound(const FunctionTable& f, const Relation& r);

// ---------------------------------------------------------------------------
// Weight schemes

/// Sparse weights; unlisted entries are zero. w is keyed by ordered pairs and
/// is expected (not forced) to be symmetric.
struct WeightScheme {
  std::map<PairKey, Rational> w;
  std::map<TripleKey, Rational> wprime;

  const Rational& weight(Index x, Index y) const;
  const Rational& weight_prime(Index x, Index y, Position i) const;

  /// w = 1 on every output-differing pair, w' = 1 on every differing triple.
  static WeightScheme unit(const FunctionTable& f);
  /// Same, restricted to the relation's pairs (closed under symmetry).
  static WeightScheme unit_on(const FunctionTable& f, const Relation& r);

  WeightScheme scaled(const Rational& c) const;
};

/// Row sums used by the weighted bound: wt(x) = sum_y w(x,y),
/// v(x,i) = sum_y w'(x,y,i), total = sum over ordered pairs of w.
struct WeightTotals {
  std::vector<Rational> wt;
  std::map<std::pair<Index, Position>, Rational> v;
  Rational total;

  Rational v_at(Index x, Position i) const;
};

WeightTotals weight_totals(const FunctionTable& f, const WeightScheme& s);

struct Violation {
  std::string kind;
  Index x = 0;
  Index y = 0;
  std::optional<Position> i;
  std::string detail;
};

struct ValidationVerdict {
  std::vector<Violation> violations;
  /// Names the row-sum convention the evaluator uses.
  std::string convention;

  bool valid() const { return violations.empty(); }
};

/// Raised when a bound is requested for a scheme that fails validation.
class InvalidSchemeError : public DomainError {
 public:
  InvalidSchemeError(const std::string& what, ValidationVerdict verdict)
      : DomainError(what), verdict_(std::move(verdict)) {}
  const ValidationVerdict& verdict() const { return verdict_; }

 private:
  ValidationVerdict verdict_;
};

ValidationVerdict validate_weight_scheme(const FunctionTable& f, const WeightScheme& s, Model model);

struct WeightedBound {
  BoundValue value;
  Witness witness;              // first argmin in (x, y, i) order
  std::vector<Witness> argmin;  // every triple attaining the minimum
};

/// Quantum: min sqrt(wt(x) wt(y) / (v(x,i) v(y,i))); randomized:
/// min max(wt(x)/v(x,i), wt(y)/v(y,i)); both over w(x,y) != 0, x_i != y_i.
WeightedBound weighted_bound(const FunctionTable& f, const WeightScheme& s, Model model);

// ---------------------------------------------------------------------------
// Probability schemes

template <class Num>
struct ProbabilityScheme {
  std::map<PairKey, Num> q;
  std::vector<Num> p;
  /// pprime[(x, i)][y] = p'_{x,i}(y); absent (x, i) means undefined.
  std::map<std::pair<Index, Position>, std::map<Index, Num>> pprime;

  Num pprime_at(Index x, Position i, Index y) const {
    auto it = pprime.find({x, i});
    if (it == pprime.end()) return Num(0);
    auto jt = it->second.find(y);
    return jt == it->second.end() ? Num(0) : jt->second;
  }
};

using ExactProbabilityScheme = ProbabilityScheme<Rational>;
using FloatProbabilityScheme = ProbabilityScheme<double>;

/// q = w/W, p = wt/W, p'_{x,i}(y) = w'(x,y,i)/v(x,i).
ExactProbabilityScheme scheme_to_distributions(const FunctionTable& f, const WeightScheme& s);

/// Normalization (exact, or within `tol` for floating schemes), nonnegativity
/// and the support condition q(x,y) = 0 unless p(x), p(y) and every
/// p'_{x,i}(y), p'_{y,i}(x) with x_i != y_i are positive.
ValidationVerdict validate_probability_scheme(const FunctionTable& f, const ExactProbabilityScheme& ps);
ValidationVerdict validate_probability_scheme(const FunctionTable& f, const FloatProbabilityScheme& ps,
                                              double tol = 1e-9);

struct SchemeBound {
  BoundValue value;
  Witness witness;
};

/// min over supported (x, y) of min over differing i of the model kernel.
SchemeBound probability_scheme_bound(const FunctionTable& f, const ExactProbabilityScheme& ps, Model model);
SchemeBound probability_scheme_bound(const FunctionTable& f, const FloatProbabilityScheme& ps, Model model,
                                     double tol = 1e-9);

}  // namespace qbound
