#include "qbound/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "qbound/errors.hpp"
#include "qbound/kernels.hpp"
#include "qbound/parallel.hpp"

namespace qbound {

namespace {

void check_nonnegative_symmetric(const DenseMatrix& m) {
  if (!m.square()) throw DomainError("principal_eigen: matrix is not square");
  const std::size_t n = m.rows();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const double v = m(r, c);
      if (!std::isfinite(v)) throw DomainError("principal_eigen: non-finite entry");
      if (v < 0.0) {
        throw DomainError("principal_eigen: negative entry at (" + std::to_string(r) + ", " + std::to_string(c) + ")");
      }
      if (c > r && std::abs(v - m(c, r)) > 1e-12) {
        throw DomainError("principal_eigen: asymmetric at (" + std::to_string(r) + ", " + std::to_string(c) + ")");
      }
    }
  }
}

double norm2(const std::vector<double>& v) { return std::sqrt(kernels::dot(v, v)); }

double max_row_sum(const DenseMatrix& m) {
  double best = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double s = 0.0;
    for (double v : m.row(r)) s += v;
    best = std::max(best, s);
  }
  return best;
}

// Connected components of the nonzero pattern, each sorted ascending.
std::vector<std::vector<std::size_t>> components(const DenseMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<int> seen(n, 0);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = 1;
    for (std::size_t k = 0; k < comp.size(); ++k) {
      for (std::size_t c = 0; c < n; ++c) {
        if (!seen[c] && m(comp[k], c) != 0.0) {
          seen[c] = 1;
          comp.push_back(c);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

double residual_of(const DenseMatrix& m, const std::vector<double>& v, double mu) {
  const std::size_t n = m.rows();
  std::vector<double> mv(n);
  kernels::active().matvec(m.data(), v.data(), mv.data(), n, n);
  double res2 = 0.0;
  for (std::size_t r = 0; r < n; ++r) res2 += (mv[r] - mu * v[r]) * (mv[r] - mu * v[r]);
  return std::sqrt(res2);
}

struct PowerOutcome {
  EigenResult result;
  bool residual_ok = false;
};

PowerOutcome power_iteration(const DenseMatrix& m, const EigenOptions& options, std::mt19937_64& rng) {
  const std::size_t n = m.rows();
  const double shift = max_row_sum(m);
  std::vector<double> v(n);
  for (double& x : v) x = 0.5 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
  {
    const double s = norm2(v);
    for (double& x : v) x /= s;
  }
  PowerOutcome out;
  const auto& k = kernels::active();
  std::vector<double> mv(n);
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    k.matvec(m.data(), v.data(), mv.data(), n, n);
    const double mu = k.dot(v.data(), mv.data(), n);
    double res2 = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double d = mv[r] - mu * v[r];
      res2 += d * d;
    }
    out.result.iterations = it;
    if (std::sqrt(res2) <= options.tol) {
      out.result.value = mu;
      out.result.vector = std::move(v);
      out.result.residual = std::sqrt(res2);
      out.residual_ok = true;
      return out;
    }
    if (shift == 0.0) break;
    for (std::size_t r = 0; r < n; ++r) mv[r] += shift * v[r];
    const double s = norm2(mv);
    for (std::size_t r = 0; r < n; ++r) v[r] = mv[r] / s;
  }
  return out;
}

// Dense symmetric eigensolver for components with a tiny spectral gap. The
// Perron vector of a connected nonnegative matrix has one sign, so taking
// absolute values only removes roundoff of the wrong sign.
EigenResult dense_fallback(const DenseMatrix& m, double tol) {
  const std::size_t n = m.rows();
  Eigen::MatrixXd a(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a(r, c) = m(r, c);
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) throw NumericalError("principal_eigen: dense eigensolver failed");
  EigenResult out;
  out.value = solver.eigenvalues()(n - 1);
  out.vector.resize(n);
  for (std::size_t r = 0; r < n; ++r) out.vector[r] = std::abs(solver.eigenvectors()(r, n - 1));
  const double s = norm2(out.vector);
  for (double& x : out.vector) x /= s;
  out.residual = residual_of(m, out.vector, out.value);
  if (out.residual > tol) {
    throw NumericalError("principal_eigen: residual " + std::to_string(out.residual) + " above tolerance");
  }
  return out;
}

// Solver tolerance on the absolute residual, scaled with the matrix so that
// rescaling Gamma does not demand residuals below roundoff.
double scaled_tol(const DenseMatrix& m, double tol) { return tol * std::max(1.0, max_row_sum(m)); }

void require_same_function(const FunctionTable& f, const AdversaryMatrix& g) {
  if (&f != &g.function() && !(f == g.function())) {
    throw DomainError("adversary matrix belongs to a different function table");
  }
}

void require_valid_gamma(const FunctionTable& f, const AdversaryMatrix& g) {
  require_same_function(f, g);
  ValidationVerdict verdict = validate_gamma(f, g.gamma());
  if (!verdict.valid()) {
    const auto& first = verdict.violations.front();
    std::string what = "invalid adversary matrix: " + std::to_string(verdict.violations.size()) +
                       " violation(s), first: " + first.kind + " " + first.detail;
    throw InvalidSchemeError(std::move(what), std::move(verdict));
  }
}

}  // namespace

EigenResult principal_eigen(const DenseMatrix& m, const EigenOptions& options) {
  check_nonnegative_symmetric(m);
  const std::size_t n = m.rows();
  if (n == 0) throw DomainError("principal_eigen: empty matrix");
  if (!(options.tol > 0.0)) throw DomainError("principal_eigen: tolerance must be positive");

  EigenResult out;
  if (max_row_sum(m) == 0.0) {
    out.vector.assign(n, 0.0);
    out.vector[0] = 1.0;
    return out;
  }

  std::mt19937_64 rng(options.seed);
  bool have = false;
  for (const std::vector<std::size_t>& comp : components(m)) {
    DenseMatrix sub(comp.size(), comp.size(), 0.0);
    for (std::size_t r = 0; r < comp.size(); ++r) {
      for (std::size_t c = 0; c < comp.size(); ++c) sub(r, c) = m(comp[r], comp[c]);
    }
    PowerOutcome e = power_iteration(sub, options, rng);
    if (!e.residual_ok) e.result = dense_fallback(sub, options.tol);
    out.iterations += e.result.iterations;
    if (!have || e.result.value > out.value) {
      have = true;
      out.value = e.result.value;
      out.residual = e.result.residual;
      out.vector.assign(n, 0.0);
      for (std::size_t r = 0; r < comp.size(); ++r) out.vector[comp[r]] = e.result.vector[r];
    }
  }
  return out;
}

AdversaryMatrix::AdversaryMatrix(std::shared_ptr<const FunctionTable> f, DenseMatrix gamma)
    : function_(std::move(f)), gamma_(std::move(gamma)) {
  if (!function_) throw DomainError("adversary matrix needs a function table");
  if (gamma_.rows() != function_->size() || gamma_.cols() != function_->size()) {
    throw DomainError("adversary matrix must be " + std::to_string(function_->size()) + " x " +
                      std::to_string(function_->size()));
  }
}

AdversaryMatrix AdversaryMatrix::unit(std::shared_ptr<const FunctionTable> f) {
  DenseMatrix g(f->size(), f->size(), 0.0);
  for (Index x = 0; x < f->size(); ++x) {
    for (Index y = 0; y < f->size(); ++y) {
      if (!f->same_output(x, y)) g(x, y) = 1.0;
    }
  }
  return AdversaryMatrix(std::move(f), std::move(g));
}

AdversaryMatrix AdversaryMatrix::scaled(double c) const {
  DenseMatrix g = gamma_;
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (double& v : g.row(r)) v *= c;
  }
  return AdversaryMatrix(function_, std::move(g));
}

ValidationVerdict validate_gamma(const FunctionTable& f, const DenseMatrix& gamma) {
  ValidationVerdict v;
  v.convention = "Gamma symmetric, nonnegative, zero on equal-output pairs";
  if (gamma.rows() != f.size() || gamma.cols() != f.size()) {
    v.violations.push_back({"shape", 0, 0, std::nullopt, "matrix is not |S| x |S|"});
    return v;
  }
  auto name = [&](Index x, Index y) { return "(" + f.input(x).to_string() + ", " + f.input(y).to_string() + ")"; };
  for (Index x = 0; x < f.size(); ++x) {
    for (Index y = 0; y < f.size(); ++y) {
      const double val = gamma(x, y);
      if (!std::isfinite(val)) v.violations.push_back({"non-finite", x, y, std::nullopt, name(x, y)});
      if (val < 0.0) v.violations.push_back({"negative", x, y, std::nullopt, name(x, y)});
      if (y > x && std::abs(val - gamma(y, x)) > 1e-12) {
        v.violations.push_back({"asymmetric", x, y, std::nullopt, name(x, y)});
      }
      if (val != 0.0 && f.same_output(x, y)) {
        v.violations.push_back({"zero-pattern", x, y, std::nullopt, name(x, y) + " has equal outputs"});
      }
    }
  }
  return v;
}

AdversaryMatrix restrict_gamma(const AdversaryMatrix& g, Position i) {
  const FunctionTable& f = g.function();
  if (i < 1 || i > f.n()) {
    throw DomainError("restrict_gamma: position " + std::to_string(i) + " outside 1.." + std::to_string(f.n()));
  }
  DenseMatrix out(f.size(), f.size(), 0.0);
  for (Index x = 0; x < f.size(); ++x) {
    for (Index y = 0; y < f.size(); ++y) {
      if (f.differs_at(x, y, i)) out(x, y) = g(x, y);
    }
  }
  return AdversaryMatrix(g.function_ptr(), std::move(out));
}

SpectralBound spectral_bound(const FunctionTable& f, const AdversaryMatrix& g, const SpectralOptions& options) {
  require_valid_gamma(f, g);
  SpectralBound out;
  out.lambda = principal_eigen(g.gamma(), scaled_tol(g.gamma(), options.tol)).value;
  if (out.lambda <= 0.0) throw DomainError("spectral bound: Gamma is identically zero");

  out.lambda_by_position.assign(f.n(), 0.0);
  parallel_for(f.n(), options.jobs, [&](std::size_t k) {
    const AdversaryMatrix gi = restrict_gamma(g, k + 1);
    out.lambda_by_position[k] = principal_eigen(gi.gamma(), scaled_tol(gi.gamma(), options.tol)).value;
  });
  auto it = std::max_element(out.lambda_by_position.begin(), out.lambda_by_position.end());
  out.argmax = static_cast<Position>(it - out.lambda_by_position.begin()) + 1;
  out.value = out.lambda / *it;
  return out;
}

FloatProbabilityScheme gamma_to_distributions(const FunctionTable& f, const AdversaryMatrix& g,
                                              const SpectralOptions& options) {
  require_valid_gamma(f, g);
  const std::size_t size = f.size();
  const auto& k = kernels::active();

  const EigenResult top = principal_eigen(g.gamma(), scaled_tol(g.gamma(), options.tol));
  const std::vector<double>& a = top.vector;
  std::vector<double> ga(size);
  k.matvec(g.gamma().data(), a.data(), ga.data(), size, size);
  const double quad = k.dot(a.data(), ga.data(), size);
  if (quad <= 0.0) throw DomainError("gamma_to_distributions: Gamma is identically zero");

  FloatProbabilityScheme ps;
  ps.p.resize(size);
  for (Index x = 0; x < size; ++x) ps.p[x] = a[x] * a[x];
  for (Index x = 0; x < size; ++x) {
    for (Index y = 0; y < size; ++y) {
      const double val = g(x, y) * a[x] * a[y];
      if (val > 0.0) ps.q[{x, y}] = val / quad;
    }
  }

  std::vector<std::map<Index, std::map<Index, double>>> per_position(f.n());
  parallel_for(f.n(), options.jobs, [&](std::size_t pos) {
    const Position i = pos + 1;
    const AdversaryMatrix gi = restrict_gamma(g, i);
    const EigenResult ei = principal_eigen(gi.gamma(), scaled_tol(gi.gamma(), options.tol));
    std::vector<double> gai(size);
    kernels::active().matvec(gi.gamma().data(), ei.vector.data(), gai.data(), size, size);
    for (Index x = 0; x < size; ++x) {
      if (gai[x] <= 0.0) continue;
      std::map<Index, double> dist;
      for (Index y = 0; y < size; ++y) {
        const double val = gi(x, y) * ei.vector[y];
        if (val > 0.0) dist[y] = val / gai[x];
      }
      per_position[pos][x] = std::move(dist);
    }
  });
  for (std::size_t pos = 0; pos < f.n(); ++pos) {
    for (auto& [x, dist] : per_position[pos]) ps.pprime[{x, pos + 1}] = std::move(dist);
  }

  for (const auto& [key, val] : ps.q) {
    for (Position i : f.diff(key.x, key.y)) {
      for (Index who : {key.x, key.y}) {
        if (ps.pprime.find({who, i}) == ps.pprime.end()) {
          throw DomainError("gamma_to_distributions: zero normalizer <x|Gamma_i|alpha_i> at x = '" +
                            f.input(who).to_string() + "', i = " + std::to_string(i));
        }
      }
    }
  }
  return ps;
}

}  // namespace qbound
