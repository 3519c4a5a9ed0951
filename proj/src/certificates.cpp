#include "qbound/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "qbound/errors.hpp"

namespace qbound {

namespace {

using Mask = std::uint32_t;

Mask diff_mask(const InputString& a, const InputString& b) {
  Mask m = 0;
  for (Position i = 1; i <= a.length(); ++i) {
    if (a.at(i) != b.at(i)) m |= Mask{1} << (i - 1);
  }
  return m;
}

// Advances `combo` (ascending 0-based indices, size k, values < n) to the
// next combination in lexicographic order; false when exhausted.
bool next_combination(std::vector<std::size_t>& combo, std::size_t n) {
  const std::size_t k = combo.size();
  for (std::size_t pos = k; pos-- > 0;) {
    if (combo[pos] < n - k + pos) {
      ++combo[pos];
      for (std::size_t q = pos + 1; q < k; ++q) combo[q] = combo[q - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<Position> smallest_certificate(const FunctionTable& f, const InputString& x) {
  require_boolean(f, "smallest_certificate");
  if (f.n() > kMaxCertificateLength) {
    throw DomainError("certificate search limited to n <= " + std::to_string(kMaxCertificateLength));
  }
  const Index xi = f.index_of(x);

  // A set I certifies x iff it hits the difference set of every input with
  // the other output.
  std::vector<Mask> opponents;
  for (Index k = 0; k < f.size(); ++k) {
    if (!f.same_output(k, xi)) opponents.push_back(diff_mask(x, f.input(k)));
  }

  const std::size_t n = f.n();
  for (std::size_t size = 0; size <= n; ++size) {
    std::vector<std::size_t> combo(size);
    for (std::size_t q = 0; q < size; ++q) combo[q] = q;
    do {
      Mask chosen = 0;
      for (std::size_t q : combo) chosen |= Mask{1} << q;
      bool sound = std::all_of(opponents.begin(), opponents.end(), [&](Mask m) { return (m & chosen) != 0; });
      if (sound) {
        std::vector<Position> out;
        for (std::size_t q : combo) out.push_back(q + 1);
        return out;
      }
    } while (size > 0 && next_combination(combo, n));
  }
  // The full index set always certifies because domain inputs are distinct.
  throw DomainError("no certificate found for '" + x.to_string() + "'");
}

std::size_t certificate_complexity(const FunctionTable& f, int bit) {
  require_boolean(f, "certificate_complexity");
  if (bit != 0 && bit != 1) throw DomainError("certificate bit must be 0 or 1");
  const std::string label = bit == 1 ? "1" : "0";
  std::size_t best = 0;
  for (Index k = 0; k < f.size(); ++k) {
    if (f.output(k) == label) best = std::max(best, smallest_certificate(f, f.input(k)).size());
  }
  return best;
}

CertificateReport certificate_report(const FunctionTable& f) {
  CertificateReport r;
  r.c0 = certificate_complexity(f, 0);
  r.c1 = certificate_complexity(f, 1);
  const double n = static_cast<double>(f.n());
  r.ceiling = std::min(std::sqrt(n * static_cast<double>(r.c0)), std::sqrt(n * static_cast<double>(r.c1)));
  return r;
}

double adversary_ceiling(const FunctionTable& f) { return certificate_report(f).ceiling; }

Position certificate_difference_index(const FunctionTable& f, const InputString& x, const InputString& y) {
  require_boolean(f, "certificate_difference_index");
  const Index xi = f.index_of(x);
  const Index yi = f.index_of(y);
  if (f.same_output(xi, yi)) throw DomainError("certificate_difference_index requires f(x) != f(y)");
  for (Position i : smallest_certificate(f, x)) {
    if (x.at(i) != y.at(i)) return i;
  }
  throw DomainError("certificate of '" + x.to_string() + "' does not separate '" + y.to_string() + "'");
}

}  // namespace qbound
