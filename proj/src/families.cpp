#include "qbound/families.hpp"

#include <algorithm>
#include <numeric>
#include <limits>
#include <random>

#include "qbound/errors.hpp"

namespace qbound {

namespace {

constexpr std::size_t kMaxLinearFamily = 4096;
constexpr std::size_t kMaxSorting = 8;
constexpr std::size_t kMaxGraphVertices = 1024;

void require_range(std::string_view family, std::size_t n, std::size_t lo, std::size_t hi) {
  if (n < lo || n > hi) {
    throw DomainError(std::string(family) + ": n = " + std::to_string(n) + " outside [" + std::to_string(lo) +
                      ", " + std::to_string(hi) + "]");
  }
}

// Unbiased draw from [0, bound) using rejection, independent of the
// standard library's distribution implementations.
std::size_t draw_below(std::mt19937_64& rng, std::size_t bound) {
  const std::uint64_t b = bound;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % b;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return static_cast<std::size_t>(v % b);
}

class Adjacency {
 public:
  explicit Adjacency(std::size_t v) : v_(v), bits_(v * v, 0) {}
  void set(std::size_t a, std::size_t b, Symbol value) {
    bits_[a * v_ + b] = value;
    bits_[b * v_ + a] = value;
  }
  InputString str() const { return InputString(bits_); }

 private:
  std::size_t v_;
  std::vector<Symbol> bits_;
};

bool edge(const InputString& adj, std::size_t vertices, std::size_t a, std::size_t b) {
  return adj.symbols()[a * vertices + b] != 0;
}

void check_adjacency(const InputString& adj, std::size_t vertices) {
  if (adj.length() != vertices * vertices) throw DomainError("adjacency string has wrong length");
}

}  // namespace

FunctionTable or_promise(std::size_t n) {
  require_range("or", n, 1, kMaxLinearFamily);
  std::vector<FunctionTable::Entry> entries;
  entries.push_back({InputString::zeros(n), "0"});
  for (Position j = 1; j <= n; ++j) entries.push_back({InputString::unit(n, j), "1"});
  return FunctionTable(Alphabet{2}, n, std::move(entries));
}

FunctionTable ordered_search(std::size_t n) {
  require_range("ordered-search", n, 1, kMaxLinearFamily);
  std::vector<FunctionTable::Entry> entries;
  for (std::size_t a = 1; a <= n; ++a) {
    std::vector<Symbol> s(n, 0);
    std::fill(s.begin() + static_cast<std::ptrdiff_t>(a - 1), s.end(), Symbol{1});
    entries.push_back({InputString(std::move(s)), std::to_string(a)});
  }
  return FunctionTable(Alphabet{2}, n, std::move(entries));
}

InputString comparison_matrix(const std::vector<unsigned>& ranks) {
  const std::size_t n = ranks.size();
  std::vector<Symbol> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = ranks[i] < ranks[j] ? 1 : 0;
  }
  return InputString(std::move(m));
}

std::vector<unsigned> ranks_from_comparison_matrix(const InputString& m, std::size_t n) {
  if (m.length() != n * n) throw DomainError("comparison matrix has wrong length");
  std::vector<unsigned> ranks(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m.symbols()[j * n + i] != 0) ++ranks[i];
    }
  }
  return ranks;
}

FunctionTable sorting(std::size_t n) {
  require_range("sorting", n, 1, kMaxSorting);
  std::vector<unsigned> ranks(n);
  std::iota(ranks.begin(), ranks.end(), 1u);
  std::vector<FunctionTable::Entry> entries;
  do {
    std::string label;
    for (unsigned r : ranks) label.push_back(static_cast<char>('0' + r));
    entries.push_back({comparison_matrix(ranks), std::move(label)});
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  return FunctionTable(Alphabet{2}, n * n, std::move(entries));
}

GraphPair bipartiteness_pair(std::size_t vertices, std::uint64_t seed) {
  require_range("bipartiteness-pair", vertices, 3, kMaxGraphVertices);
  std::mt19937_64 rng(seed);
  const std::size_t hub = 0;
  std::size_t leaf_i = 1 + draw_below(rng, vertices - 1);
  std::size_t leaf_j;
  do {
    leaf_j = 1 + draw_below(rng, vertices - 1);
  } while (leaf_j == leaf_i);
  if (leaf_j < leaf_i) std::swap(leaf_i, leaf_j);

  Adjacency g(vertices);
  for (std::size_t v = 1; v < vertices; ++v) g.set(hub, v, 1);
  Adjacency h = g;
  h.set(leaf_i, leaf_j, 1);

  GraphPair out{"bipartiteness-pair", vertices, seed, diff_positions(g.str(), h.str()), {hub, leaf_i, leaf_j}};
  return out;
}

GraphPair connectivity_pair(std::size_t vertices, std::uint64_t seed) {
  require_range("connectivity-pair", vertices, 6, kMaxGraphVertices);
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> pi(vertices);
  std::iota(pi.begin(), pi.end(), std::size_t{0});
  for (std::size_t k = vertices - 1; k > 0; --k) std::swap(pi[k], pi[draw_below(rng, k + 1)]);

  // Both resulting cycles need length >= 3, i.e. (t - s) mod n in [3, n-3].
  std::size_t s;
  std::size_t t;
  do {
    s = draw_below(rng, vertices);
    t = draw_below(rng, vertices);
  } while (((t + vertices - s) % vertices) < 3 || ((t + vertices - s) % vertices) > vertices - 3);

  auto at = [&](std::size_t k) { return pi[k % vertices]; };
  Adjacency g(vertices);
  for (std::size_t k = 0; k < vertices; ++k) g.set(at(k), at(k + 1), 1);
  Adjacency h = g;
  h.set(at(s), at(s + 1), 0);
  h.set(at(t), at(t + 1), 0);
  h.set(at(s), at(t + 1), 1);
  h.set(at(s + 1), at(t), 1);

  std::vector<std::size_t> choices = pi;
  choices.push_back(s);
  choices.push_back(t);
  return GraphPair{"connectivity-pair", vertices, seed, diff_positions(g.str(), h.str()), std::move(choices)};
}

bool is_bipartite(const InputString& adjacency, std::size_t vertices) {
  check_adjacency(adjacency, vertices);
  std::vector<int> colour(vertices, -1);
  std::vector<std::size_t> queue;
  for (std::size_t start = 0; start < vertices; ++start) {
    if (colour[start] >= 0) continue;
    colour[start] = 0;
    queue.assign(1, start);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::size_t u = queue[head];
      for (std::size_t v = 0; v < vertices; ++v) {
        if (!edge(adjacency, vertices, u, v)) continue;
        if (colour[v] < 0) {
          colour[v] = 1 - colour[u];
          queue.push_back(v);
        } else if (colour[v] == colour[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

std::size_t component_count(const InputString& adjacency, std::size_t vertices) {
  check_adjacency(adjacency, vertices);
  std::vector<bool> seen(vertices, false);
  std::vector<std::size_t> stack;
  std::size_t components = 0;
  for (std::size_t start = 0; start < vertices; ++start) {
    if (seen[start]) continue;
    ++components;
    seen[start] = true;
    stack.assign(1, start);
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < vertices; ++v) {
        if (edge(adjacency, vertices, u, v) && !seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
  }
  return components;
}

std::size_t differing_edges(const InputString& a, const InputString& b, std::size_t vertices) {
  check_adjacency(a, vertices);
  check_adjacency(b, vertices);
  std::size_t count = 0;
  for (std::size_t u = 0; u < vertices; ++u) {
    for (std::size_t v = u + 1; v < vertices; ++v) {
      if (edge(a, vertices, u, v) != edge(b, vertices, u, v)) ++count;
    }
  }
  return count;
}

bool is_graph_family(std::string_view name) { return name == "bipartiteness-pair" || name == "connectivity-pair"; }

FamilyInstance make_family(std::string_view name, std::size_t n, std::uint64_t seed) {
  if (name == "or") return or_promise(n);
  if (name == "ordered-search") return ordered_search(n);
  if (name == "sorting") return sorting(n);
  if (name == "bipartiteness-pair") return bipartiteness_pair(n, seed);
  if (name == "connectivity-pair") return connectivity_pair(n, seed);
  throw DomainError("unknown family '" + std::string(name) + "'");
}

}  // namespace qbound
