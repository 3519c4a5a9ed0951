#pragma once

#include <cstddef>
#include <vector>

#include "qbound/function_table.hpp"

namespace qbound {

struct CertificateReport {
  std::size_t c0 = 0;
  std::size_t c1 = 0;
  /// min(sqrt(n c0), sqrt(n c1)); caps every adversary-style bound for f.
  double ceiling = 0.0;
};

/// Largest input length accepted by the subset search.
inline constexpr std::size_t kMaxCertificateLength = 20;

/// Minimum-cardinality index set I (1-based, ascending) such that every
/// y in the domain agreeing with x on I has f(y) = f(x); ties broken by the
/// lexicographically smallest sorted list. Agreement is only quantified over
/// the table's domain, so promise tables get promise certificates.
std::vector<Position> smallest_certificate(const FunctionTable& f, const InputString& x);

/// max |smallest_certificate(f, x)| over inputs with output `bit`; 0 if none.
std::size_t certificate_complexity(const FunctionTable& f, int bit);

double adversary_ceiling(const FunctionTable& f);
CertificateReport certificate_report(const FunctionTable& f);

/// Smallest position of smallest_certificate(f, x) where x and y differ.
/// Requires f(x) != f(y); either order of outputs is accepted.
Position certificate_difference_index(const FunctionTable& f, const InputString& x, const InputString& y);

}  // namespace qbound
