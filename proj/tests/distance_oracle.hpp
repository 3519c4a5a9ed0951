#pragma once

// Enumeration oracles for the built-in distance schemes, written against the
// raw definitions rather than the library's data structures.

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "qbound/rational.hpp"

namespace qbound::test {

struct OracleScheme {
  Rational w_unordered;
  std::size_t domain = 0;
  std::size_t min_load = 0;
  std::size_t max_load = 0;
  std::size_t max_product = 0;
};

/// Sorting: entries sigma -> (k..k+d) o sigma and their reverses, loads
/// counted per (x, matrix entry, d) with multiplicity.
inline OracleScheme sorting_oracle(unsigned n) {
  using Perm = std::vector<unsigned>;
  std::vector<Perm> perms;
  Perm p(n);
  std::iota(p.begin(), p.end(), 1u);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto matrix = [&](const Perm& s) {
    std::vector<int> m(n * n);
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned j = 0; j < n; ++j) m[i * n + j] = s[i] < s[j];
    }
    return m;
  };
  struct E {
    Perm a, b;
    unsigned d;
  };
  std::vector<E> es;
  for (const Perm& s : perms) {
    for (unsigned d = 1; d < n; ++d) {
      for (unsigned k = 1; k + d <= n; ++k) {
        Perm t(n);
        for (unsigned j = 0; j < n; ++j) {
          const unsigned r = s[j];
          t[j] = r == k + d ? k : (r >= k && r < k + d ? r + 1 : r);
        }
        es.push_back({s, t, d});
        es.push_back({t, s, d});
      }
    }
  }
  OracleScheme o;
  o.domain = perms.size();
  Rational w = 0;
  for (const E& e : es) w += Rational(1, e.d);
  o.w_unordered = w / 2;

  std::map<Perm, std::vector<int>> mats;
  for (const Perm& s : perms) mats[s] = matrix(s);
  // load[(x, pos, d)] = #{entries from x with distance d that differ at pos}
  std::map<std::tuple<Perm, unsigned, unsigned>, std::size_t> out_load, in_load;
  for (const E& e : es) {
    for (unsigned pos = 0; pos < n * n; ++pos) {
      if (mats[e.a][pos] != mats[e.b][pos]) {
        ++out_load[{e.a, pos, e.d}];
        ++in_load[{e.b, pos, e.d}];
      }
    }
  }
  auto load = [&](auto& table, const Perm& x, unsigned pos) {
    std::size_t best = 0;
    for (unsigned d = 1; d < n; ++d) {
      auto it = table.find({x, pos, d});
      if (it != table.end()) best = std::max(best, it->second);
    }
    return best;
  };
  o.min_load = ~std::size_t{0};
  for (const E& e : es) {
    for (unsigned pos = 0; pos < n * n; ++pos) {
      if (mats[e.a][pos] == mats[e.b][pos]) continue;
      const std::size_t rl = load(out_load, e.a, pos), ll = load(in_load, e.b, pos);
      o.min_load = std::min({o.min_load, rl, ll});
      o.max_load = std::max({o.max_load, rl, ll});
      o.max_product = std::max(o.max_product, rl * ll);
    }
  }
  return o;
}

/// Ordered search: W_unordered by pair enumeration.
inline Rational ordered_search_w_oracle(unsigned n) {
  Rational w = 0;
  for (unsigned a = 1; a <= n; ++a) {
    for (unsigned b = a + 1; b <= n; ++b) w += Rational(1, b - a);
  }
  return w;
}

/// (n H_{n-1} - (n-1)) / n.
inline Rational ordered_search_closed_form(unsigned n) {
  Rational h = 0;
  for (unsigned k = 1; k < n; ++k) h += Rational(1, k);
  return (Rational(n) * h - Rational(n - 1)) / Rational(n);
}

}  // namespace qbound::test
