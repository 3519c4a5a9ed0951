#include "qbound/function_table.hpp"

#include <algorithm>

#include "qbound/errors.hpp"

namespace qbound {

InputString InputString::parse(std::string_view digits) {
  std::vector<Symbol> symbols;
  symbols.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '9') {
      throw ParseError("input string must consist of decimal digits: '" + std::string(digits) + "'");
    }
    symbols.push_back(static_cast<Symbol>(c - '0'));
  }
  return InputString(std::move(symbols));
}

InputString InputString::zeros(std::size_t n) { return InputString(std::vector<Symbol>(n, 0)); }

InputString InputString::unit(std::size_t n, Position j) {
  if (j < 1 || j > n) throw DomainError("unit vector position out of range");
  std::vector<Symbol> s(n, 0);
  s[j - 1] = 1;
  return InputString(std::move(s));
}

Symbol InputString::at(Position i) const {
  if (i == 0) return 0;
  if (i > symbols_.size()) throw DomainError("position " + std::to_string(i) + " out of range");
  return symbols_[i - 1];
}

std::string InputString::to_string() const {
  std::string out;
  out.reserve(symbols_.size());
  for (Symbol s : symbols_) {
    out.push_back(s < 10 ? static_cast<char>('0' + s) : '?');
  }
  return out;
}

InstancePair diff_positions(const InputString& x, const InputString& y) {
  if (x.length() != y.length()) {
    throw DomainError("length mismatch: " + std::to_string(x.length()) + " vs " + std::to_string(y.length()));
  }
  InstancePair pair{x, y, {}};
  for (Position i = 1; i <= x.length(); ++i) {
    if (x.at(i) != y.at(i)) pair.diff.push_back(i);
  }
  return pair;
}

FunctionTable::FunctionTable(Alphabet alphabet, std::size_t n, std::vector<Entry> entries)
    : alphabet_(alphabet), n_(n) {
  if (alphabet.size < 1) throw DomainError("alphabet size must be at least 1");
  if (n < 1) throw DomainError("input length n must be positive");
  inputs_.reserve(entries.size());
  outputs_.reserve(entries.size());
  for (auto& e : entries) {
    if (e.input.length() != n) {
      throw DomainError("input '" + e.input.to_string() + "' has length " + std::to_string(e.input.length()) +
                        ", expected " + std::to_string(n));
    }
    for (Symbol s : e.input.symbols()) {
      if (s >= alphabet.size) {
        throw DomainError("input '" + e.input.to_string() + "' uses a symbol outside the alphabet of size " +
                          std::to_string(alphabet.size));
      }
    }
    auto [it, inserted] = index_.emplace(e.input, inputs_.size());
    if (!inserted) throw DomainError("duplicate input '" + e.input.to_string() + "'");
    if (e.output != "0" && e.output != "1") boolean_ = false;
    inputs_.push_back(std::move(e.input));
    outputs_.push_back(std::move(e.output));
  }
}

std::optional<Index> FunctionTable::find(const InputString& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Index FunctionTable::index_of(const InputString& x) const {
  auto k = find(x);
  if (!k) throw DomainError("input '" + x.to_string() + "' is not in the domain");
  return *k;
}

std::vector<Position> FunctionTable::diff(Index a, Index b) const {
  return diff_positions(inputs_[a], inputs_[b]).diff;
}

bool FunctionTable::differs_at(Index a, Index b, Position i) const {
  return inputs_[a].at(i) != inputs_[b].at(i);
}

bool operator==(const FunctionTable& a, const FunctionTable& b) {
  if (a.alphabet_ != b.alphabet_ || a.n_ != b.n_ || a.size() != b.size()) return false;
  for (Index k = 0; k < a.size(); ++k) {
    auto other = b.find(a.inputs_[k]);
    if (!other || b.outputs_[*other] != a.outputs_[k]) return false;
  }
  return true;
}

void require_boolean(const FunctionTable& f, std::string_view what) {
  if (!f.is_boolean()) throw DomainError(std::string(what) + " requires a boolean function (outputs in {0,1})");
}

}  // namespace qbound
