#include "qbound/adversary_schemes.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qbound {

namespace {

const Rational kZero{0};

std::string describe(const FunctionTable& f, Index x, Index y) {
  return "(" + f.input(x).to_string() + ", " + f.input(y).to_string() + ")";
}

void add_violation(ValidationVerdict& v, std::string kind, Index x, Index y, std::optional<Position> i,
                   std::string detail) {
  v.violations.push_back(Violation{std::move(kind), x, y, i, std::move(detail)});
}

std::string summarize(const ValidationVerdict& v) {
  std::string out = std::to_string(v.violations.size()) + " violation(s)";
  if (!v.violations.empty()) out += ", first: " + v.violations.front().kind + " " + v.violations.front().detail;
  return out;
}

}  // namespace

std::string_view to_string(Model m) { return m == Model::quantum ? "quantum" : "randomized"; }

Model parse_model(std::string_view text) {
  if (text == "quantum") return Model::quantum;
  if (text == "randomized") return Model::randomized;
  throw DomainError("unknown model '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------

Relation default_relation(const FunctionTable& f) {
  Relation r;
  if (f.is_boolean()) {
    for (Index x = 0; x < f.size(); ++x) {
      if (f.output(x) != "0") continue;
      for (Index y = 0; y < f.size(); ++y) {
        if (f.output(y) == "1") r.pairs.emplace_back(x, y);
      }
    }
    return r;
  }
  for (Index x = 0; x < f.size(); ++x) {
    for (Index y = x + 1; y < f.size(); ++y) {
      if (!f.same_output(x, y)) r.pairs.emplace_back(x, y);
    }
  }
  return r;
}

UnweightedBound unweighted_bound(const FunctionTable& f, const Relation& r) {
  if (r.pairs.empty()) throw DomainError("unweighted bound: empty relation");
  std::set<std::pair<Index, Index>> pairs;
  for (auto [x, y] : r.pairs) {
    if (x >= f.size() || y >= f.size()) throw DomainError("relation index out of range");
    if (f.same_output(x, y)) throw DomainError("relation pair " + describe(f, x, y) + " has equal outputs");
    pairs.emplace(x, y);
  }

  std::map<Index, std::size_t> deg_x;
  std::map<Index, std::size_t> deg_y;
  std::map<std::pair<Index, Position>, std::size_t> load_x;
  std::map<std::pair<Index, Position>, std::size_t> load_y;
  for (auto [x, y] : pairs) {
    ++deg_x[x];
    ++deg_y[y];
    for (Position i : f.diff(x, y)) {
      ++load_x[{x, i}];
      ++load_y[{y, i}];
    }
  }

  auto min_of = [](const auto& m) {
    std::size_t best = SIZE_MAX;
    for (const auto& [k, v] : m) best = std::min(best, v);
    return best;
  };
  auto max_of = [](const auto& m) {
    std::size_t best = 0;
    for (const auto& [k, v] : m) best = std::max(best, v);
    return best;
  };

  UnweightedBound out;
  out.m = min_of(deg_x);
  out.m_prime = min_of(deg_y);
  out.l = max_of(load_x);
  out.l_prime = max_of(load_y);
  Rational radicand(BigInt(out.m) * out.m_prime, BigInt(out.l) * out.l_prime);
  out.value = BoundValue::sqrt_of(radicand);
  return out;
}

// ---------------------------------------------------------------------------

const Rational& WeightScheme::weight(Index x, Index y) const {
  auto it = w.find({x, y});
  return it == w.end() ? kZero : it->second;
}

const Rational& WeightScheme::weight_prime(Index x, Index y, Position i) const {
  auto it = wprime.find({x, y, i});
  return it == wprime.end() ? kZero : it->second;
}

WeightScheme WeightScheme::unit(const FunctionTable& f) {
  WeightScheme s;
  for (Index x = 0; x < f.size(); ++x) {
    for (Index y = 0; y < f.size(); ++y) {
      if (f.same_output(x, y)) continue;
      s.w[{x, y}] = 1;
      for (Position i : f.diff(x, y)) s.wprime[{x, y, i}] = 1;
    }
  }
  return s;
}

WeightScheme WeightScheme::unit_on(const FunctionTable& f, const Relation& r) {
  WeightScheme s;
  for (auto [x, y] : r.pairs) {
    if (f.same_output(x, y)) throw DomainError("relation pair " + describe(f, x, y) + " has equal outputs");
    for (auto [a, b] : {std::pair{x, y}, std::pair{y, x}}) {
      s.w[{a, b}] = 1;
      for (Position i : f.diff(a, b)) s.wprime[{a, b, i}] = 1;
    }
  }
  return s;
}

WeightScheme WeightScheme::scaled(const Rational& c) const {
  WeightScheme s = *this;
  for (auto& [k, v] : s.w) v *= c;
  for (auto& [k, v] : s.wprime) v *= c;
  return s;
}

Rational WeightTotals::v_at(Index x, Position i) const {
  auto it = v.find({x, i});
  return it == v.end() ? Rational(0) : it->second;
}

WeightTotals weight_totals(const FunctionTable& f, const WeightScheme& s) {
  WeightTotals t;
  t.wt.assign(f.size(), Rational(0));
  for (const auto& [k, w] : s.w) {
    t.wt.at(k.x) += w;
    t.total += w;
  }
  for (const auto& [k, w] : s.wprime) t.v[{k.x, k.i}] += w;
  return t;
}

ValidationVerdict validate_weight_scheme(const FunctionTable& f, const WeightScheme& s, Model model) {
  ValidationVerdict v;
  v.convention = "v(x,i) = sum_y w'(x,y,i)";

  for (const auto& [k, w] : s.w) {
    if (k.x >= f.size() || k.y >= f.size()) {
      add_violation(v, "index-out-of-range", k.x, k.y, std::nullopt, "pair index outside the domain");
      continue;
    }
    if (w < 0) add_violation(v, "negative-w", k.x, k.y, std::nullopt, describe(f, k.x, k.y) + " w = " + to_string(w));
    const Rational& back = s.weight(k.y, k.x);
    if (back != w && (k.x < k.y || s.w.find({k.y, k.x}) == s.w.end())) {
      add_violation(v, "asymmetric-w", k.x, k.y, std::nullopt,
                    describe(f, k.x, k.y) + " w = " + to_string(w) + " but reverse = " + to_string(back));
    }
    if (w != 0 && f.same_output(k.x, k.y)) {
      add_violation(v, "w-on-equal-outputs", k.x, k.y, std::nullopt, describe(f, k.x, k.y));
    }
  }

  for (const auto& [k, w] : s.wprime) {
    if (k.x >= f.size() || k.y >= f.size() || k.i < 1 || k.i > f.n()) {
      add_violation(v, "index-out-of-range", k.x, k.y, k.i, "triple outside the domain or positions");
      continue;
    }
    if (w < 0) add_violation(v, "negative-wprime", k.x, k.y, k.i, describe(f, k.x, k.y) + " w' = " + to_string(w));
    if (w != 0 && !f.differs_at(k.x, k.y, k.i)) {
      add_violation(v, "wprime-on-equal-position", k.x, k.y, k.i, describe(f, k.x, k.y));
    }
    if (w != 0 && f.same_output(k.x, k.y)) {
      add_violation(v, "wprime-on-equal-outputs", k.x, k.y, k.i, describe(f, k.x, k.y));
    }
  }

  // Model condition, once per unordered pair (it is symmetric in x, y).
  for (const auto& [k, w] : s.w) {
    if (k.x >= f.size() || k.y >= f.size() || w == 0) continue;
    if (k.x > k.y && s.weight(k.y, k.x) == w) continue;
    for (Position i : f.diff(k.x, k.y)) {
      const Rational& a = s.weight_prime(k.x, k.y, i);
      const Rational& b = s.weight_prime(k.y, k.x, i);
      if (model == Model::quantum) {
        if (a * b < w * w) {
          add_violation(v, "quantum-validity", k.x, k.y, i,
                        describe(f, k.x, k.y) + " i=" + std::to_string(i) + ": w'(x,y,i) w'(y,x,i) = " +
                            to_string(Rational(a * b)) + " < w^2 = " + to_string(Rational(w * w)));
        }
      } else if (a < w || b < w) {
        add_violation(v, "randomized-validity", k.x, k.y, i,
                      describe(f, k.x, k.y) + " i=" + std::to_string(i) + ": w' = (" + to_string(a) + ", " +
                          to_string(b) + ") below w = " + to_string(w));
      }
    }
  }
  return v;
}

WeightedBound weighted_bound(const FunctionTable& f, const WeightScheme& s, Model model) {
  ValidationVerdict verdict = validate_weight_scheme(f, s, model);
  if (!verdict.valid()) {
    std::string what =
        "invalid weight scheme for the " + std::string(to_string(model)) + " model: " + summarize(verdict);
    throw InvalidSchemeError(std::move(what), std::move(verdict));
  }
  const WeightTotals t = weight_totals(f, s);

  std::optional<Rational> best;
  WeightedBound out;
  for (const auto& [k, w] : s.w) {
    if (w == 0) continue;
    for (Position i : f.diff(k.x, k.y)) {
      const Rational vx = t.v_at(k.x, i);
      const Rational vy = t.v_at(k.y, i);
      Rational kernel;
      if (model == Model::quantum) {
        kernel = (t.wt[k.x] * t.wt[k.y]) / (vx * vy);
      } else {
        kernel = std::max(Rational(t.wt[k.x] / vx), Rational(t.wt[k.y] / vy));
      }
      if (!best || kernel < *best) {
        best = kernel;
        out.argmin.assign(1, Witness{k.x, k.y, i});
      } else if (kernel == *best) {
        out.argmin.push_back(Witness{k.x, k.y, i});
      }
    }
  }
  if (!best) throw DomainError("weighted bound: minimization over an empty set (w is identically zero)");
  out.witness = out.argmin.front();
  out.value = model == Model::quantum ? BoundValue::sqrt_of(*best) : BoundValue::rational(*best);
  return out;
}

// ---------------------------------------------------------------------------

ExactProbabilityScheme scheme_to_distributions(const FunctionTable& f, const WeightScheme& s) {
  const WeightTotals t = weight_totals(f, s);
  if (t.total <= 0) throw DomainError("scheme_to_distributions: total weight W must be positive");
  ExactProbabilityScheme ps;
  for (const auto& [k, w] : s.w) {
    if (w != 0) ps.q[k] = w / t.total;
  }
  ps.p.reserve(f.size());
  for (const Rational& wt : t.wt) ps.p.push_back(wt / t.total);
  for (const auto& [k, w] : s.wprime) {
    if (w == 0) continue;
    const Rational v = t.v_at(k.x, k.i);
    if (v == 0) throw DomainError("scheme_to_distributions: zero normalizer v(x,i)");
    ps.pprime[{k.x, k.i}][k.y] = w / v;
  }
  return ps;
}

namespace {

bool is_zero(const Rational& r, double) { return r == 0; }
bool is_zero(double d, double tol) { return std::abs(d) <= tol; }
bool sums_to_one(const Rational& r, double) { return r == 1; }
bool sums_to_one(double d, double tol) { return std::abs(d - 1.0) <= tol; }
std::string show(const Rational& r) { return to_string(r); }
std::string show(double d) { return std::to_string(d); }

template <class Num>
ValidationVerdict validate_impl(const FunctionTable& f, const ProbabilityScheme<Num>& ps, double tol) {
  ValidationVerdict v;
  v.convention = "support: q(x,y) > 0 requires p(x), p(y), p'_{x,i}(y), p'_{y,i}(x) > 0 for x_i != y_i";
  if (ps.p.size() != f.size()) {
    add_violation(v, "p-size", 0, 0, std::nullopt,
                  "p has " + std::to_string(ps.p.size()) + " entries, domain has " + std::to_string(f.size()));
    return v;
  }

  Num q_sum(0);
  for (const auto& [k, val] : ps.q) {
    if (k.x >= f.size() || k.y >= f.size()) {
      add_violation(v, "index-out-of-range", k.x, k.y, std::nullopt, "q entry outside the domain");
      continue;
    }
    if (val < 0) add_violation(v, "negative-q", k.x, k.y, std::nullopt, describe(f, k.x, k.y));
    q_sum += val;
  }
  if (!sums_to_one(q_sum, tol)) add_violation(v, "q-not-normalized", 0, 0, std::nullopt, "sum q = " + show(q_sum));

  Num p_sum(0);
  for (Index x = 0; x < ps.p.size(); ++x) {
    if (ps.p[x] < 0) add_violation(v, "negative-p", x, x, std::nullopt, f.input(x).to_string());
    p_sum += ps.p[x];
  }
  if (!sums_to_one(p_sum, tol)) add_violation(v, "p-not-normalized", 0, 0, std::nullopt, "sum p = " + show(p_sum));

  for (const auto& [key, dist] : ps.pprime) {
    Num s(0);
    for (const auto& [y, val] : dist) {
      if (val < 0) add_violation(v, "negative-pprime", key.first, y, key.second, "");
      s += val;
    }
    if (!sums_to_one(s, tol)) {
      add_violation(v, "pprime-not-normalized", key.first, key.first, key.second, "sum = " + show(s));
    }
  }

  for (const auto& [k, val] : ps.q) {
    if (k.x >= f.size() || k.y >= f.size() || is_zero(val, 0.0)) continue;
    const auto diff = f.diff(k.x, k.y);
    if (diff.empty()) {
      add_violation(v, "empty-index-set", k.x, k.y, std::nullopt, describe(f, k.x, k.y) + " supported but equal");
      continue;
    }
    if (is_zero(ps.p[k.x], 0.0) || is_zero(ps.p[k.y], 0.0)) {
      add_violation(v, "support", k.x, k.y, std::nullopt, describe(f, k.x, k.y) + " has p(x) or p(y) = 0");
    }
    for (Position i : diff) {
      if (is_zero(ps.pprime_at(k.x, i, k.y), 0.0) || is_zero(ps.pprime_at(k.y, i, k.x), 0.0)) {
        add_violation(v, "support", k.x, k.y, i, describe(f, k.x, k.y) + " has p' = 0 at i=" + std::to_string(i));
      }
    }
  }
  return v;
}

template <class Num>
void require_valid(const FunctionTable& f, const ProbabilityScheme<Num>& ps, double tol) {
  ValidationVerdict verdict = validate_impl(f, ps, tol);
  if (!verdict.valid()) {
    std::string what = "invalid probability scheme: " + summarize(verdict);
    throw InvalidSchemeError(std::move(what), std::move(verdict));
  }
  bool any = std::any_of(ps.q.begin(), ps.q.end(), [](const auto& e) { return !is_zero(e.second, 0.0); });
  if (!any) throw DomainError("probability scheme has empty support");
}

}  // namespace

ValidationVerdict validate_probability_scheme(const FunctionTable& f, const ExactProbabilityScheme& ps) {
  return validate_impl(f, ps, 0.0);
}

ValidationVerdict validate_probability_scheme(const FunctionTable& f, const FloatProbabilityScheme& ps,
                                              double tol) {
  return validate_impl(f, ps, tol);
}

SchemeBound probability_scheme_bound(const FunctionTable& f, const ExactProbabilityScheme& ps, Model model) {
  require_valid(f, ps, 0.0);
  std::optional<Rational> best;
  SchemeBound out;
  for (const auto& [k, q] : ps.q) {
    if (q == 0) continue;
    for (Position i : f.diff(k.x, k.y)) {
      const Rational ax = ps.p[k.x] * ps.pprime_at(k.x, i, k.y);
      const Rational ay = ps.p[k.y] * ps.pprime_at(k.y, i, k.x);
      Rational kernel = model == Model::quantum ? Rational(ax * ay / (q * q)) : std::max(Rational(ax / q), Rational(ay / q));
      if (!best || kernel < *best) {
        best = kernel;
        out.witness = Witness{k.x, k.y, i};
      }
    }
  }
  out.value = model == Model::quantum ? BoundValue::sqrt_of(*best) : BoundValue::rational(*best);
  return out;
}

SchemeBound probability_scheme_bound(const FunctionTable& f, const FloatProbabilityScheme& ps, Model model,
                                     double tol) {
  require_valid(f, ps, tol);
  std::optional<double> best;
  SchemeBound out;
  for (const auto& [k, q] : ps.q) {
    if (q == 0.0) continue;
    for (Position i : f.diff(k.x, k.y)) {
      const double ax = ps.p[k.x] * ps.pprime_at(k.x, i, k.y);
      const double ay = ps.p[k.y] * ps.pprime_at(k.y, i, k.x);
      double kernel = model == Model::quantum ? std::sqrt(ax * ay) / q : std::max(ax / q, ay / q);
      if (!best || kernel < *best) {
        best = kernel;
        out.witness = Witness{k.x, k.y, i};
      }
    }
  }
  out.value = BoundValue::floating(*best);
  return out;
}

}  // namespace qbound
