#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "qbound/adversary_schemes.hpp"
#include "qbound/function_table.hpp"
#include "qbound/matrix.hpp"

namespace qbound {

struct EigenResult {
  double value = 0.0;
  std::vector<double> vector;  // unit l2 norm, entries >= 0
  double residual = 0.0;       // ||M v - value v||_2
  std::size_t iterations = 0;
};

struct EigenOptions {
  double tol = 1e-10;
  /// Power iterations per connected component before switching to a dense
  /// symmetric eigensolver (slow convergence means a small spectral gap).
  std::size_t max_iterations = 20'000;
  std::uint64_t seed = 0x5eed5eedULL;
};

/// Largest eigenpair of a nonnegative symmetric matrix. Each connected
/// component of the nonzero pattern is solved separately by power iteration
/// on M + cI (c = max row sum) from a seeded strictly positive start vector,
/// stopping once the residual is <= tol; the best component wins and the
/// vector is zero elsewhere. Throws DomainError on asymmetric (beyond 1e-12)
/// or negative input, NumericalError if even the dense fallback misses tol.
EigenResult principal_eigen(const DenseMatrix& m, const EigenOptions& options);
inline EigenResult principal_eigen(const DenseMatrix& m, double tol = 1e-10) {
  return principal_eigen(m, EigenOptions{tol});
}

/// Nonnegative symmetric S x S matrix tied to a function table.
class AdversaryMatrix {
 public:
  /// Checks only that gamma is |S| x |S|; see validate_gamma for the rest.
  AdversaryMatrix(std::shared_ptr<const FunctionTable> f, DenseMatrix gamma);

  /// Unit entries on every output-differing pair.
  static AdversaryMatrix unit(std::shared_ptr<const FunctionTable> f);

  const FunctionTable& function() const { return *function_; }
  const std::shared_ptr<const FunctionTable>& function_ptr() const { return function_; }
  const DenseMatrix& gamma() const { return gamma_; }
  double operator()(Index x, Index y) const { return gamma_(x, y); }

  AdversaryMatrix scaled(double c) const;

 private:
  std::shared_ptr<const FunctionTable> function_;
  DenseMatrix gamma_;
};

/// Symmetry, nonnegativity and zero pattern (Gamma(x,y) = 0 when f(x) = f(y)).
ValidationVerdict validate_gamma(const FunctionTable& f, const DenseMatrix& gamma);

/// Gamma_i(x, y) = Gamma(x, y) if x_i != y_i, else 0. i must be in 1..n.
AdversaryMatrix restrict_gamma(const AdversaryMatrix& g, Position i);

struct SpectralOptions {
  double tol = 1e-10;
  std::size_t jobs = 1;
};

struct SpectralBound {
  double value = 0.0;                      // lambda(Gamma) / max_i lambda(Gamma_i)
  double lambda = 0.0;                     // lambda(Gamma)
  std::vector<double> lambda_by_position;  // index i-1 holds lambda(Gamma_i)
  Position argmax = 0;                     // first i attaining the max
};

SpectralBound spectral_bound(const FunctionTable& f, const AdversaryMatrix& g, const SpectralOptions& options = {});

/// q(x,y) = Gamma(x,y) a_x a_y / <a|Gamma|a>, p(x) = a_x^2,
/// p'_{x,i}(y) = Gamma_i(x,y) a_i(y) / <x|Gamma_i|a_i> with a, a_i principal
/// eigenvectors. (x, i) with a vanishing normalizer are skipped unless some
/// supported pair needs them, which is an error.
FloatProbabilityScheme gamma_to_distributions(const FunctionTable& f, const AdversaryMatrix& g,
                                              const SpectralOptions& options = {});

}  // namespace qbound
