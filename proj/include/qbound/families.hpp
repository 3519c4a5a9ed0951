#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qbound/function_table.hpp"

namespace qbound {

/// Search promise: OR on {0^n} and the unit vectors e_1..e_n.
FunctionTable or_promise(std::size_t n);

/// Instances 0^{a-1}1^{n-a+1} for a = 1..n, labelled by a.
FunctionTable ordered_search(std::size_t n);

/// Comparison matrices M_sigma for every sigma in S_n (lexicographic order of
/// sigma's one-line form), flattened row-major, labelled by sigma. n <= 8.
FunctionTable sorting(std::size_t n);

/// (M_sigma)_{i,j} = [sigma(i) < sigma(j)]; ranks are 1-based one-line form.
InputString comparison_matrix(const std::vector<unsigned>& ranks);
/// Inverse of comparison_matrix.
std::vector<unsigned> ranks_from_comparison_matrix(const InputString& m, std::size_t n);
/// 1-based string position of matrix entry (i, j) in an n x n row-major layout.
constexpr Position matrix_position(std::size_t n, std::size_t i, std::size_t j) { return (i - 1) * n + j; }

/// Two adjacency matrices over `vertices` vertices (row-major, symmetric,
/// zero diagonal) plus the pseudorandom choices that produced them.
struct GraphPair {
  std::string family;
  std::size_t vertices = 0;
  std::uint64_t seed = 0;
  InstancePair pair;  // first = G, second = H
  /// bipartiteness: {hub, leaf_i, leaf_j}; connectivity: the cycle order pi
  /// followed by s and t.
  std::vector<std::size_t> choices;
};

/// G = star centred at vertex 0, H = G plus an edge between two random leaves.
GraphPair bipartiteness_pair(std::size_t vertices, std::uint64_t seed);
/// G = random Hamilton cycle, H = G split into two cycles at random s, t.
GraphPair connectivity_pair(std::size_t vertices, std::uint64_t seed);

bool is_bipartite(const InputString& adjacency, std::size_t vertices);
std::size_t component_count(const InputString& adjacency, std::size_t vertices);
/// Edges (strict upper triangle) present in exactly one of the two graphs.
std::size_t differing_edges(const InputString& a, const InputString& b, std::size_t vertices);

using FamilyInstance = std::variant<FunctionTable, GraphPair>;

/// Names: or, ordered-search, sorting, bipartiteness-pair, connectivity-pair.
/// The seed only affects graph families.
FamilyInstance make_family(std::string_view name, std::size_t n, std::uint64_t seed = 0);
bool is_graph_family(std::string_view name);

}  // namespace qbound
