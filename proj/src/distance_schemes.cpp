#include "qbound/distance_schemes.hpp"

#include <algorithm>
#include <map>

#include "qbound/errors.hpp"
#include "qbound/families.hpp"

namespace qbound {

DistanceScheme::DistanceScheme(std::size_t domain_size, const std::vector<Entry>& defining)
    : domain_size_(domain_size) {
  entries_.reserve(2 * defining.size());
  for (const Entry& e : defining) {
    if (e.x >= domain_size || e.y >= domain_size) {
      throw DomainError("distance entry (" + std::to_string(e.x) + ", " + std::to_string(e.y) +
                        ") outside a domain of size " + std::to_string(domain_size));
    }
    if (e.d == 0) continue;
    if (e.x == e.y) throw DomainError("distance entry pairs input " + std::to_string(e.x) + " with itself");
    entries_.push_back(e);
    entries_.push_back({e.y, e.x, e.d});
  }
  std::sort(entries_.begin(), entries_.end());
}

Rational DistanceScheme::w_ordered() const {
  Rational w = 0;
  for (const Entry& e : entries_) w += Rational(1, e.d);
  return w;
}

namespace {

DistanceScheme ordered_search_scheme(std::size_t n) {
  const FunctionTable f = ordered_search(n);
  std::vector<DistanceScheme::Entry> defining;
  // Domain index k holds a = k + 1.
  for (Index a = 0; a < n; ++a) {
    for (Index b = a + 1; b < n; ++b) defining.push_back({a, b, static_cast<unsigned>(b - a)});
  }
  return DistanceScheme(f.size(), defining);
}

DistanceScheme sorting_scheme(std::size_t n) {
  const FunctionTable f = sorting(n);
  std::map<std::vector<unsigned>, Index> index;
  for (Index k = 0; k < f.size(); ++k) index[ranks_from_comparison_matrix(f.input(k), n)] = k;

  std::vector<DistanceScheme::Entry> defining;
  for (const auto& [sigma, from] : index) {
    for (unsigned d = 1; d < n; ++d) {
      for (unsigned k = 1; k + d <= n; ++k) {
        // tau = (k, k+1, ..., k+d) o sigma
        std::vector<unsigned> tau = sigma;
        for (unsigned& r : tau) {
          if (r >= k && r < k + d) {
            ++r;
          } else if (r == k + d) {
            r = k;
          }
        }
        defining.push_back({from, index.at(tau), d});
      }
    }
  }
  return DistanceScheme(f.size(), defining);
}

}  // namespace

DistanceScheme builtin_scheme(std::string_view name, std::size_t n) {
  if (name == "ordered-search") return ordered_search_scheme(n);
  if (name == "sorting") return sorting_scheme(n);
  throw DomainError("no built-in distance scheme named '" + std::string(name) + "'");
}

ValidationVerdict validate_distance_scheme(const FunctionTable& f, const DistanceScheme& s) {
  ValidationVerdict v;
  v.convention = "entries closed under reversal; W_unordered = W_ordered / 2";
  if (s.domain_size() != f.size()) {
    v.violations.push_back({"shape", 0, 0, std::nullopt, "scheme domain size differs from the function table"});
    return v;
  }
  for (const auto& e : s.entries()) {
    if (e.x < e.y && f.same_output(e.x, e.y)) {
      v.violations.push_back({"d-on-equal-outputs", e.x, e.y, std::nullopt,
                              "(" + f.input(e.x).to_string() + ", " + f.input(e.y).to_string() + ")"});
    }
  }
  return v;
}

LoadTables loads(const FunctionTable& f, const DistanceScheme& s) {
  if (s.domain_size() != f.size()) throw DomainError("distance scheme does not match the function table");
  LoadTables out;
  const std::size_t n = f.n();

  // Entries are sorted by x, so each x's outgoing entries are contiguous; the
  // reverse-closure makes incoming entries of y the outgoing entries of y.
  // Hence LL(y, i) = RL(y, i) and one pass suffices.
  const auto& es = s.entries();
  for (std::size_t lo = 0; lo < es.size();) {
    std::size_t hi = lo;
    while (hi < es.size() && es[hi].x == es[lo].x) ++hi;
    const Index x = es[lo].x;
    for (Position i = 1; i <= n; ++i) {
      std::map<unsigned, std::size_t> by_d;
      for (std::size_t k = lo; k < hi; ++k) {
        if (f.differs_at(x, es[k].y, i)) ++by_d[es[k].d];
      }
      std::size_t best = 0;
      for (const auto& [d, c] : by_d) best = std::max(best, c);
      if (best > 0) {
        out.rl[{x, i}] = best;
        out.ll[{x, i}] = best;
      }
    }
    lo = hi;
  }

  for (const auto& e : es) {
    for (Position i : f.diff(e.x, e.y)) {
      const std::size_t r = out.rl.at({e.x, i});
      const std::size_t l = out.ll.at({e.y, i});
      out.max_rl = std::max(out.max_rl, r);
      out.max_ll = std::max(out.max_ll, l);
      out.max_product = std::max(out.max_product, r * l);
      out.max_min = std::max(out.max_min, std::min(r, l));
    }
  }
  return out;
}

DistanceBounds distance_bounds(const FunctionTable& f, const DistanceScheme& s) {
  ValidationVerdict verdict = validate_distance_scheme(f, s);
  if (!verdict.valid()) {
    std::string what = "invalid distance scheme: " + verdict.violations.front().kind + " " +
                       verdict.violations.front().detail;
    throw InvalidSchemeError(std::move(what), std::move(verdict));
  }
  if (s.empty()) throw DomainError("distance scheme is empty (W = 0)");

  DistanceBounds out;
  out.w_ordered = s.w_ordered();
  out.w_unordered = out.w_ordered / 2;
  out.loads = loads(f, s);
  if (out.loads.max_product == 0) throw DomainError("distance scheme has no differing position on its support");

  const Rational scale = out.w_unordered / Rational(f.size());
  out.quantum = BoundValue::sqrt_of(scale * scale / Rational(out.loads.max_product));
  out.randomized = BoundValue::rational(scale / Rational(out.loads.max_min));

  bool have_q = false;
  bool have_r = false;
  for (const auto& e : s.entries()) {
    for (Position i : f.diff(e.x, e.y)) {
      const std::size_t r = out.loads.rl.at({e.x, i});
      const std::size_t l = out.loads.ll.at({e.y, i});
      if (!have_q && r * l == out.loads.max_product) {
        out.quantum_witness = {e.x, e.y, i};
        have_q = true;
      }
      if (!have_r && std::min(r, l) == out.loads.max_min) {
        out.randomized_witness = {e.x, e.y, i};
        have_r = true;
      }
    }
  }
  return out;
}

}  // namespace qbound
