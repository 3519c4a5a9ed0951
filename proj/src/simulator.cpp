#include "qbound/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "qbound/errors.hpp"

namespace qbound {

namespace {

constexpr double kUnitaryTol = 1e-9;
constexpr double kStochasticTol = 1e-12;

void check_unitary(const ComplexMatrix& u, std::size_t t) {
  const std::size_t d = u.rows();
  // Columns of U as rows of a conjugate-free transpose, so that
  // (U^dagger U)(a, b) = cdotc(column a, column b).
  ComplexMatrix cols(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) cols(c, r) = u(r, c);
  }
  const auto& k = kernels::active();
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      const cplx g = k.cdotc(cols.row(a).data(), cols.row(b).data(), d);
      const cplx want = a == b ? cplx(1.0) : cplx(0.0);
      if (std::abs(g - want) > kUnitaryTol) {
        throw DomainError("transform U_" + std::to_string(t) + " is not unitary: (U^dagger U)(" + std::to_string(a) +
                          ", " + std::to_string(b) + ") deviates by " + std::to_string(std::abs(g - want)));
      }
    }
  }
}

void check_stochastic(const DenseMatrix& u, std::size_t t) {
  const std::size_t d = u.rows();
  std::vector<double> sums(d, 0.0);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      const double v = u(r, c);
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw DomainError("transform U_" + std::to_string(t) + " has a negative or non-finite entry at (" +
                          std::to_string(r) + ", " + std::to_string(c) + ")");
      }
      sums[c] += v;
    }
  }
  for (std::size_t c = 0; c < d; ++c) {
    if (std::abs(sums[c] - 1.0) > kStochasticTol) {
      throw DomainError("transform U_" + std::to_string(t) + " column " + std::to_string(c) + " sums to " +
                        std::to_string(sums[c]));
    }
  }
}

template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar) {
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const T av = a(ar, ac);
      if (av == T{}) continue;
      for (std::size_t br = 0; br < b.rows(); ++br) {
        for (std::size_t bc = 0; bc < b.cols(); ++bc) out(ar * b.rows() + br, ac * b.cols() + bc) = av * b(br, bc);
      }
    }
  }
  return out;
}

double label_probability(const std::map<std::string, double>& dist, const std::string& label) {
  auto it = dist.find(label);
  return it == dist.end() ? 0.0 : it->second;
}

}  // namespace

void QueryAlgorithm::check_shape(std::size_t count) const {
  if (n_ == 0) throw DomainError("algorithm needs n >= 1");
  if (alphabet_.size < 1) throw DomainError("algorithm alphabet must be nonempty");
  if (work_dim_ == 0) throw DomainError("algorithm work_dim must be positive");
  if (dim() > kMaxStateDimension) {
    throw DomainError("state dimension " + std::to_string(dim()) + " exceeds the cap of " +
                      std::to_string(kMaxStateDimension));
  }
  if (count == 0) throw DomainError("algorithm needs at least U_0");
  if (extractor_.block_size == 0 || extractor_.labels.size() != extractor_.block_size) {
    throw DomainError("output extractor needs exactly block_size labels");
  }
}

QueryAlgorithm QueryAlgorithm::quantum(std::size_t n, Alphabet alphabet, std::size_t work_dim,
                                       std::vector<ComplexMatrix> transforms, OutputExtractor extractor) {
  QueryAlgorithm a;
  a.model_ = Model::quantum;
  a.n_ = n;
  a.alphabet_ = alphabet;
  a.work_dim_ = work_dim;
  a.extractor_ = std::move(extractor);
  a.check_shape(transforms.size());
  for (std::size_t t = 0; t < transforms.size(); ++t) {
    if (transforms[t].rows() != a.dim() || transforms[t].cols() != a.dim()) {
      throw DomainError("transform U_" + std::to_string(t) + " is not " + std::to_string(a.dim()) + " x " +
                        std::to_string(a.dim()));
    }
    check_unitary(transforms[t], t);
  }
  a.unitaries_ = std::move(transforms);
  return a;
}

QueryAlgorithm QueryAlgorithm::randomized(std::size_t n, Alphabet alphabet, std::size_t work_dim,
                                          std::vector<DenseMatrix> transforms, OutputExtractor extractor) {
  QueryAlgorithm a;
  a.model_ = Model::randomized;
  a.n_ = n;
  a.alphabet_ = alphabet;
  a.work_dim_ = work_dim;
  a.extractor_ = std::move(extractor);
  a.check_shape(transforms.size());
  for (std::size_t t = 0; t < transforms.size(); ++t) {
    if (transforms[t].rows() != a.dim() || transforms[t].cols() != a.dim()) {
      throw DomainError("transform U_" + std::to_string(t) + " is not " + std::to_string(a.dim()) + " x " +
                        std::to_string(a.dim()));
    }
    check_stochastic(transforms[t], t);
  }
  a.stochastic_ = std::move(transforms);
  return a;
}

std::size_t QueryAlgorithm::queries() const {
  return (model_ == Model::quantum ? unitaries_.size() : stochastic_.size()) - 1;
}

SimTrace run(const QueryAlgorithm& alg, const InputString& x, std::optional<std::string> expected) {
  if (x.length() != alg.n()) {
    throw DomainError("input '" + x.to_string() + "' has length " + std::to_string(x.length()) +
                      " but the algorithm expects " + std::to_string(alg.n()));
  }
  for (Symbol s : x.symbols()) {
    if (s >= alg.alphabet().size) throw DomainError("input '" + x.to_string() + "' uses a symbol outside the alphabet");
  }

  const std::size_t d = alg.dim();
  const std::size_t sigma = alg.alphabet().size;
  const std::size_t work = alg.work_dim();
  const std::size_t T = alg.queries();
  const auto& k = kernels::active();

  SimTrace tr;
  tr.model = alg.model();
  tr.input = x;
  tr.avg_qprob.assign(alg.n() + 1, 0.0);

  // Oracle as a basis permutation: image of basis index b.
  std::vector<std::size_t> oracle(d);
  for (Position i = 0; i <= alg.n(); ++i) {
    const std::size_t xi = x.at(i);
    for (std::size_t z = 0; z < sigma; ++z) {
      for (std::size_t w = 0; w < work; ++w) oracle[alg.basis(i, z, w)] = alg.basis(i, (z + xi) % sigma, w);
    }
  }
  auto query_profile = [&](auto&& weight_of) {
    std::vector<double> p(alg.n() + 1, 0.0);
    const std::size_t block = sigma * work;
    for (Position i = 0; i <= alg.n(); ++i) {
      double s = 0.0;
      for (std::size_t b = i * block; b < (i + 1) * block; ++b) s += weight_of(b);
      p[i] = s;
    }
    return p;
  };
  auto read_output = [&](auto&& weight_of) {
    const auto& ex = alg.extractor();
    for (std::size_t b = 0; b < d; ++b) {
      const double pr = weight_of(b);
      if (pr != 0.0) tr.output_dist[ex.labels[(b % work) % ex.block_size]] += pr;
    }
  };

  if (alg.model() == Model::quantum) {
    std::vector<cplx> psi(d, 0.0), tmp(d);
    psi[0] = 1.0;
    k.cmatvec(alg.unitaries()[0].data(), psi.data(), tmp.data(), d, d);
    psi.swap(tmp);
    for (std::size_t t = 1; t <= T; ++t) {
      tr.amplitudes.push_back(psi);
      tr.qprob.push_back(query_profile([&](std::size_t b) { return std::norm(psi[b]); }));
      for (std::size_t b = 0; b < d; ++b) tmp[oracle[b]] = psi[b];
      k.cmatvec(alg.unitaries()[t].data(), tmp.data(), psi.data(), d, d);
    }
    tr.amplitudes.push_back(psi);
    read_output([&](std::size_t b) { return std::norm(psi[b]); });
  } else {
    std::vector<double> psi(d, 0.0), tmp(d);
    psi[0] = 1.0;
    k.matvec(alg.stochastic()[0].data(), psi.data(), tmp.data(), d, d);
    psi.swap(tmp);
    for (std::size_t t = 1; t <= T; ++t) {
      tr.masses.push_back(psi);
      tr.qprob.push_back(query_profile([&](std::size_t b) { return psi[b]; }));
      for (std::size_t b = 0; b < d; ++b) tmp[oracle[b]] = psi[b];
      k.matvec(alg.stochastic()[t].data(), tmp.data(), psi.data(), d, d);
    }
    tr.masses.push_back(psi);
    read_output([&](std::size_t b) { return psi[b]; });
  }

  if (T > 0) {
    for (const auto& p : tr.qprob) {
      for (Position i = 0; i <= alg.n(); ++i) tr.avg_qprob[i] += p[i];
    }
    for (double& v : tr.avg_qprob) v /= static_cast<double>(T);
  }
  if (expected) tr.eps = 1.0 - label_probability(tr.output_dist, *expected);
  return tr;
}

double CodeLengthTable::weight(Position i) const {
  auto it = std::lower_bound(positions.begin(), positions.end(), i);
  if (it == positions.end() || *it != i) return 0.0;
  return std::exp2(-lengths[static_cast<std::size_t>(it - positions.begin())]);
}

CodeLengthTable shannon_fano_lengths(const std::vector<double>& distribution) {
  CodeLengthTable out;
  for (Position i = 0; i < distribution.size(); ++i) {
    const double p = distribution[i];
    if (!(p > 0.0)) continue;
    const double len = -std::log2(p);
    // Slack absorbs roundoff on dyadic probabilities such as 0.25000000000000006.
    const int ceil_len = static_cast<int>(std::ceil(std::max(0.0, len) - 1e-12));
    out.positions.push_back(i);
    out.lengths.push_back(len);
    out.ceil_lengths.push_back(ceil_len);
    out.entropy += p * len;
    out.kraft += std::exp2(-ceil_len);
    out.expected_ceil_length += p * ceil_len;
  }
  return out;
}

CodeLengthTable shannon_fano_lengths(const SimTrace& trace) {
  if (trace.queries() == 0) throw DomainError("code lengths need a run with at least one query");
  return shannon_fano_lengths(trace.avg_qprob);
}

DivergenceReport divergence_report(const QueryAlgorithm& alg, const InputString& x, const InputString& y,
                                   double eps, const FunctionTable* reference) {
  if (!(eps >= 0.0 && eps < 0.5)) throw DomainError("eps must lie in [0, 1/2)");
  if (x.length() != alg.n() || y.length() != alg.n()) throw DomainError("inputs do not match the algorithm's n");

  DivergenceReport rep;
  rep.model = alg.model();
  rep.diff = diff_positions(x, y).diff;
  std::optional<std::string> fx, fy;
  if (reference) {
    fx = (*reference)(x);
    fy = (*reference)(y);
  }
  rep.trace_x = run(alg, x, fx);
  rep.trace_y = run(alg, y, fy);
  const std::size_t T = alg.queries();
  const bool quantum = alg.model() == Model::quantum;
  const auto& k = kernels::active();

  auto separation = [&](std::size_t s) {
    if (quantum) return k.cdotc(rep.trace_x.amplitudes[s].data(), rep.trace_y.amplitudes[s].data(), alg.dim());
    return cplx(k.l1_distance(rep.trace_x.masses[s].data(), rep.trace_y.masses[s].data(), alg.dim()));
  };
  auto kernel = [&](double a, double b) { return quantum ? std::sqrt(a * b) : std::min(a, b); };

  std::vector<cplx> sep(T + 1);
  for (std::size_t s = 0; s <= T; ++s) sep[s] = separation(s);
  for (std::size_t t = 1; t <= T; ++t) {
    StepCheck step;
    step.t = t;
    step.lhs = quantum ? std::abs(sep[t - 1] - sep[t]) : sep[t].real() - sep[t - 1].real();
    for (Position i : rep.diff) step.rhs += 2.0 * kernel(rep.trace_x.qprob[t - 1][i], rep.trace_y.qprob[t - 1][i]);
    step.pass = step.lhs <= step.rhs + kDivergenceTolerance;
    rep.steps.push_back(step);
  }
  rep.final_overlap = quantum ? std::abs(sep[T]) : sep[T].real();

  rep.eps = eps;
  if (rep.trace_x.eps && rep.trace_y.eps) {
    rep.measured_eps = std::max(*rep.trace_x.eps, *rep.trace_y.eps);
    if (*rep.measured_eps < eps) rep.eps = std::max(0.0, *rep.measured_eps);
  }

  double sum = 0.0;
  for (Position i : rep.diff) sum += kernel(rep.trace_x.avg_qprob[i], rep.trace_y.avg_qprob[i]);
  rep.lhs = 2.0 * static_cast<double>(T) * sum;
  rep.rhs = quantum ? 1.0 - 2.0 * std::sqrt(rep.eps * (1.0 - rep.eps)) : 1.0 - 2.0 * rep.eps;
  rep.margin = rep.lhs - rep.rhs;
  rep.aggregate_pass = rep.lhs >= rep.rhs - kDivergenceTolerance;

  const bool steps_pass = std::all_of(rep.steps.begin(), rep.steps.end(), [](const StepCheck& s) { return s.pass; });
  if (rep.diff.empty() || (fx && *fx == *fy)) {
    rep.status = steps_pass ? "vacuous" : "fail";
    rep.detail = "inputs not distinguishable";
  } else if (rep.measured_eps && *rep.measured_eps > eps + kDivergenceTolerance) {
    rep.status = "precondition-unmet";
    rep.detail = "measured error exceeds eps";
  } else if (quantum ? rep.final_overlap > 2.0 * std::sqrt(rep.eps * (1.0 - rep.eps)) + kDivergenceTolerance
                     : rep.final_overlap < 1.0 - 2.0 * rep.eps - kDivergenceTolerance) {
    rep.status = "precondition-unmet";
    rep.detail = "final states are not eps-separated";
  } else {
    rep.status = steps_pass && rep.aggregate_pass ? "pass" : "fail";
  }
  return rep;
}

ProxyBoundCheck theorem1_bound(const SimTrace& trace_x, const SimTrace& trace_y, Model model, double eps) {
  if (trace_x.queries() != trace_y.queries() || trace_x.avg_qprob.size() != trace_y.avg_qprob.size()) {
    throw DomainError("traces come from different algorithms");
  }
  const std::vector<Position> diff = diff_positions(trace_x.input, trace_y.input).diff;
  if (diff.empty()) throw DomainError("theorem1_bound needs inputs that differ somewhere");

  ProxyBoundCheck out;
  out.queries = trace_x.queries();
  const CodeLengthTable cx = shannon_fano_lengths(trace_x);
  const CodeLengthTable cy = shannon_fano_lengths(trace_y);
  for (Position i : diff) {
    const double a = cx.weight(i);
    const double b = cy.weight(i);
    out.denominator += model == Model::quantum ? std::sqrt(a * b) : std::min(a, b);
  }
  const double numerator =
      out.constant * (model == Model::quantum ? 1.0 - 2.0 * std::sqrt(eps * (1.0 - eps)) : 1.0 - 2.0 * eps);
  if (numerator <= 0.0) {
    out.bound = 0.0;
  } else if (out.denominator == 0.0) {
    out.bound = std::numeric_limits<double>::infinity();
  } else {
    out.bound = numerator / out.denominator;
  }
  out.satisfied = static_cast<double>(out.queries) >= out.bound - kDivergenceTolerance;
  return out;
}

QueryAlgorithm make_grover(std::size_t n, std::size_t t) {
  if (n < 2 || (n & (n - 1)) != 0) throw DomainError("grover needs n to be a power of two >= 2");
  const std::size_t q = n + 1;
  const std::size_t work = n + 1;
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));

  // Householder reflection taking |0> to the uniform superposition u over 1..n.
  ComplexMatrix prep(q, q);
  {
    std::vector<double> v(q, -amp);
    v[0] = 1.0;
    const double vv = 2.0;  // |e_0 - u|^2
    for (std::size_t r = 0; r < q; ++r) {
      for (std::size_t c = 0; c < q; ++c) prep(r, c) = (r == c ? 1.0 : 0.0) - 2.0 * v[r] * v[c] / vv;
    }
  }
  // Answer register |0> -> |->, turning the additive oracle into a phase.
  ComplexMatrix minus(2, 2);
  minus(0, 0) = M_SQRT1_2;
  minus(1, 0) = -M_SQRT1_2;
  minus(0, 1) = M_SQRT1_2;
  minus(1, 1) = M_SQRT1_2;
  // Inversion about the mean on positions 1..n; identity on the null query.
  ComplexMatrix diffusion(q, q);
  diffusion(0, 0) = 1.0;
  for (std::size_t r = 1; r < q; ++r) {
    for (std::size_t c = 1; c < q; ++c) diffusion(r, c) = 2.0 / static_cast<double>(n) - (r == c ? 1.0 : 0.0);
  }

  const ComplexMatrix id_work = ComplexMatrix::identity(work);
  const ComplexMatrix id_answer = ComplexMatrix::identity(2);
  auto copy_query_to_work = [&](const ComplexMatrix& m) {
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < q; ++i) {
      for (std::size_t z = 0; z < 2; ++z) {
        for (std::size_t w = 0; w < work; ++w) {
          const std::size_t from = (i * 2 + z) * work + w;
          const std::size_t to = (i * 2 + z) * work + (w + i) % work;
          std::copy(m.row(from).begin(), m.row(from).end(), out.row(to).begin());
        }
      }
    }
    return out;
  };

  std::vector<ComplexMatrix> transforms;
  const ComplexMatrix u0 = kron(prep, kron(minus, id_work));
  const ComplexMatrix d = kron(diffusion, kron(id_answer, id_work));
  if (t == 0) {
    transforms.push_back(copy_query_to_work(u0));
  } else {
    transforms.push_back(u0);
    for (std::size_t s = 1; s < t; ++s) transforms.push_back(d);
    transforms.push_back(copy_query_to_work(d));
  }

  OutputExtractor ex;
  ex.block_size = work;
  for (std::size_t w = 0; w < work; ++w) ex.labels.push_back(std::to_string(w));
  return QueryAlgorithm::quantum(n, Alphabet{2}, work, std::move(transforms), std::move(ex));
}

SamplerStrategy parse_sampler_strategy(std::string_view text) {
  if (text == "scan") return SamplerStrategy::scan;
  if (text == "uniform") return SamplerStrategy::uniform;
  throw DomainError("unknown sampler strategy '" + std::string(text) + "'");
}

QueryAlgorithm make_classical_sampler(std::size_t n, std::size_t t, SamplerStrategy strategy) {
  if (n == 0) throw DomainError("sampler needs n >= 1");
  if (t == 0) throw DomainError("sampler needs at least one query");
  if (strategy == SamplerStrategy::scan && t > n) throw DomainError("scan sampler cannot make more than n queries");
  const std::size_t q = n + 1;
  const std::size_t work = 2;
  const std::size_t d = q * 2 * work;
  auto basis = [&](std::size_t i, std::size_t z, std::size_t w) { return (i * 2 + z) * work + w; };

  // Stochastic map: fold the answer bit into the OR bit, clear the answer
  // register and move the query register according to `next`.
  auto step = [&](bool fold, const std::function<std::vector<std::pair<std::size_t, double>>()>& next) {
    DenseMatrix m(d, d);
    const auto targets = next();
    for (std::size_t i = 0; i < q; ++i) {
      for (std::size_t z = 0; z < 2; ++z) {
        for (std::size_t w = 0; w < work; ++w) {
          const std::size_t w2 = fold ? (w | z) : w;
          for (const auto& [i2, pr] : targets) m(basis(i2, 0, w2), basis(i, z, w)) += pr;
        }
      }
    }
    return m;
  };
  auto position_for = [&](std::size_t query) -> std::vector<std::pair<std::size_t, double>> {
    if (strategy == SamplerStrategy::scan) return {{query, 1.0}};
    std::vector<std::pair<std::size_t, double>> all;
    for (std::size_t i = 1; i <= n; ++i) all.emplace_back(i, 1.0 / static_cast<double>(n));
    return all;
  };

  std::vector<DenseMatrix> transforms;
  transforms.push_back(step(false, [&] { return position_for(1); }));
  for (std::size_t s = 1; s < t; ++s) transforms.push_back(step(true, [&] { return position_for(s + 1); }));
  transforms.push_back(step(true, [] { return std::vector<std::pair<std::size_t, double>>{{0, 1.0}}; }));

  return QueryAlgorithm::randomized(n, Alphabet{2}, work, std::move(transforms), OutputExtractor{2, {"0", "1"}});
}

FunctionTable index_search(std::size_t n) {
  std::vector<FunctionTable::Entry> entries;
  entries.push_back({InputString::zeros(n), "0"});
  for (Position j = 1; j <= n; ++j) entries.push_back({InputString::unit(n, j), std::to_string(j)});
  return FunctionTable(Alphabet{2}, n, std::move(entries));
}

FunctionTable or_total(std::size_t n) {
  if (n == 0 || n > 20) throw DomainError("or_total needs 1 <= n <= 20");
  std::vector<FunctionTable::Entry> entries;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Symbol> s(n);
    for (std::size_t b = 0; b < n; ++b) s[b] = static_cast<Symbol>((mask >> (n - 1 - b)) & 1U);
    entries.push_back({InputString(std::move(s)), mask == 0 ? "0" : "1"});
  }
  return FunctionTable(Alphabet{2}, n, std::move(entries));
}

}  // namespace qbound
