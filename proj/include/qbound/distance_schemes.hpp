#pragma once

#include <cstddef>
#include <map>
#include <string_view>
#include <utility>
#include <vector>

#include "qbound/adversary_schemes.hpp"
#include "qbound/function_table.hpp"
#include "qbound/rational.hpp"

namespace qbound {

/// Integer distance scheme stored as a symmetric multiset of ordered entries
/// (x, y, d): every defining entry appears together with its reverse. A pair
/// defined twice (for example sigma -> tau and tau -> sigma in the sorting
/// scheme) therefore counts twice in W and in the loads.
class DistanceScheme {
 public:
  struct Entry {
    Index x;
    Index y;
    unsigned d;
    friend auto operator<=>(const Entry&, const Entry&) = default;
  };

  DistanceScheme() = default;
  /// Adds the reverse of every entry; d = 0 entries are dropped. Rejects
  /// x = y and indices outside the domain.
  DistanceScheme(std::size_t domain_size, const std::vector<Entry>& defining);

  std::size_t domain_size() const { return domain_size_; }
  /// Ordered entries, sorted, including reverses.
  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// Sum of 1/d over ordered entries.
  Rational w_ordered() const;
  /// Half of w_ordered: the per-unordered-pair count used by the bounds.
  Rational w_unordered() const { return w_ordered() / 2; }

 private:
  std::size_t domain_size_ = 0;
  std::vector<Entry> entries_;
};

/// Scheme for the ordered-search or sorting family over the same domain
/// order as make_family.
DistanceScheme builtin_scheme(std::string_view name, std::size_t n);

/// Every entry must separate outputs; returns one violation per bad entry.
ValidationVerdict validate_distance_scheme(const FunctionTable& f, const DistanceScheme& s);

struct LoadTables {
  /// rl[(x, i)] = max over d of #{entries (x, y, d) with x_i != y_i}.
  std::map<std::pair<Index, Position>, std::size_t> rl;
  /// ll[(y, i)] = max over d of #{entries (x, y, d) with x_i != y_i}.
  std::map<std::pair<Index, Position>, std::size_t> ll;
  std::size_t max_rl = 0;
  std::size_t max_ll = 0;
  /// max over supported triples of RL(x,i) LL(y,i): the quantum min kernel
  /// is 1/sqrt of this.
  std::size_t max_product = 0;
  /// max over supported triples of min(RL(x,i), LL(y,i)): the randomized
  /// min kernel is 1/this.
  std::size_t max_min = 0;
};

LoadTables loads(const FunctionTable& f, const DistanceScheme& s);

struct DistanceBounds {
  Rational w_ordered;
  Rational w_unordered;
  LoadTables loads;
  BoundValue quantum;     // (W/|S|) / sqrt(RL LL) at the worst triple
  BoundValue randomized;  // (W/|S|) * max(1/RL, 1/LL) at the worst triple
  Witness quantum_witness;
  Witness randomized_witness;
};

DistanceBounds distance_bounds(const FunctionTable& f, const DistanceScheme& s);

}  // namespace qbound
