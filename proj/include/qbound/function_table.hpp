#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qbound {

/// 1-based position into an input string. Position 0 is the reserved null
/// query and only exists inside the simulator's query register.
using Position = std::size_t;

/// Index of an input within a FunctionTable's domain (0-based, domain order).
using Index = std::size_t;

using Symbol = std::uint8_t;

/// Finite alphabet {0, ..., size-1}. Documents spell symbols as single
/// decimal digits, so sizes above 10 cannot be serialized.
struct Alphabet {
  std::uint32_t size = 2;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

class InputString {
 public:
  InputString() = default;
  explicit InputString(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}

  /// Parses a digit string such as "0102".
  static InputString parse(std::string_view digits);
  static InputString zeros(std::size_t n);
  /// Unit vector e_j (1-based j).
  static InputString unit(std::size_t n, Position j);

  std::size_t length() const { return symbols_.size(); }
  /// 1-based access; at(0) is the null-query convention x_0 = 0.
  Symbol at(Position i) const;
  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::string to_string() const;

  friend auto operator<=>(const InputString&, const InputString&) = default;
  friend bool operator==(const InputString&, const InputString&) = default;

 private:
  std::vector<Symbol> symbols_;
};

struct InstancePair {
  InputString first;
  InputString second;
  std::vector<Position> diff;  // ascending, 1-based
};

/// Positions where x and y differ; throws DomainError on length mismatch.
InstancePair diff_positions(const InputString& x, const InputString& y);

/// Explicit finite function f : S -> S' with S a subset of alphabet^n.
/// Outputs are opaque labels; a table is boolean when every label is "0" or "1".
class FunctionTable {
 public:
  struct Entry {
    InputString input;
    std::string output;
  };

  /// Validates and builds: rejects duplicate inputs, symbols outside the
  /// alphabet, and strings whose length differs from n.
  FunctionTable(Alphabet alphabet, std::size_t n, std::vector<Entry> entries);

  Alphabet alphabet() const { return alphabet_; }
  std::size_t n() const { return n_; }
  std::size_t size() const { return inputs_.size(); }

  const InputString& input(Index k) const { return inputs_.at(k); }
  const std::string& output(Index k) const { return outputs_.at(k); }
  const std::vector<InputString>& inputs() const { return inputs_; }
  const std::vector<std::string>& outputs() const { return outputs_; }

  std::optional<Index> find(const InputString& x) const;
  /// Throws DomainError when x is not in the domain.
  Index index_of(const InputString& x) const;
  const std::string& operator()(const InputString& x) const { return outputs_[index_of(x)]; }

  bool is_boolean() const { return boolean_; }
  bool same_output(Index a, Index b) const { return outputs_[a] == outputs_[b]; }

  /// Positions where inputs a and b differ.
  std::vector<Position> diff(Index a, Index b) const;
  bool differs_at(Index a, Index b, Position i) const;

  /// Same domain and outputs, regardless of entry order.
  friend bool operator==(const FunctionTable& a, const FunctionTable& b);

 private:
  Alphabet alphabet_;
  std::size_t n_;
  std::vector<InputString> inputs_;
  std::vector<std::string> outputs_;
  std::map<InputString, Index> index_;
  bool boolean_ = true;
};

/// Throws DomainError unless f is boolean; `what` names the caller.
void require_boolean(const FunctionTable& f, std::string_view what);

}  // namespace qbound
