#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qbound/adversary_schemes.hpp"
#include "qbound/function_table.hpp"
#include "qbound/kernels.hpp"
#include "qbound/matrix.hpp"

namespace qbound {

using kernels::cplx;

/// Reads the output label of a basis state from its work coordinate:
/// label = labels[w mod block_size].
struct OutputExtractor {
  std::size_t block_size = 1;
  std::vector<std::string> labels;
};

/// Largest state dimension (n+1) |Sigma| work_dim accepted.
inline constexpr std::size_t kMaxStateDimension = std::size_t{1} << 20;

/// T-query algorithm over registers (i, z, w) with i in 0..n, z in Sigma,
/// w in 0..work_dim-1; basis index ((i |Sigma|) + z) work_dim + w.
/// Transforms are U_0..U_T: unitary (quantum) or column-stochastic
/// (randomized), checked on construction.
class QueryAlgorithm {
 public:
  static QueryAlgorithm quantum(std::size_t n, Alphabet alphabet, std::size_t work_dim,
                                std::vector<ComplexMatrix> transforms, OutputExtractor extractor);
  static QueryAlgorithm randomized(std::size_t n, Alphabet alphabet, std::size_t work_dim,
                                   std::vector<DenseMatrix> transforms, OutputExtractor extractor);

  Model model() const { return model_; }
  std::size_t n() const { return n_; }
  Alphabet alphabet() const { return alphabet_; }
  std::size_t work_dim() const { return work_dim_; }
  std::size_t dim() const { return (n_ + 1) * alphabet_.size * work_dim_; }
  /// Number of oracle calls T.
  std::size_t queries() const;
  const std::vector<ComplexMatrix>& unitaries() const { return unitaries_; }
  const std::vector<DenseMatrix>& stochastic() const { return stochastic_; }
  const OutputExtractor& extractor() const { return extractor_; }

  std::size_t basis(Position i, std::size_t z, std::size_t w) const {
    return ((i * alphabet_.size) + z) * work_dim_ + w;
  }

 private:
  QueryAlgorithm() = default;
  void check_shape(std::size_t count) const;

  Model model_ = Model::quantum;
  std::size_t n_ = 0;
  Alphabet alphabet_;
  std::size_t work_dim_ = 1;
  std::vector<ComplexMatrix> unitaries_;
  std::vector<DenseMatrix> stochastic_;
  OutputExtractor extractor_;
};

struct SimTrace {
  Model model = Model::quantum;
  InputString input;
  /// psi_1..psi_{T+1}: the state before each query, then the final state.
  /// Only the vector matching the model is filled.
  std::vector<std::vector<cplx>> amplitudes;
  std::vector<std::vector<double>> masses;
  /// qprob[t-1][i] = p_t(i) for t = 1..T, i = 0..n.
  std::vector<std::vector<double>> qprob;
  /// (1/T) sum_t p_t(i); all zero when T = 0.
  std::vector<double> avg_qprob;
  std::map<std::string, double> output_dist;
  /// 1 - Pr[output = expected] when an expected label was given.
  std::optional<double> eps;

  std::size_t queries() const { return qprob.size(); }
};

/// Applies U_0, O_x, U_1, ..., O_x, U_T from |0,0,0>. The oracle maps
/// |i,z,w> to |i, z + x_i mod |Sigma|, w> with x_0 = 0.
SimTrace run(const QueryAlgorithm& alg, const InputString& x, std::optional<std::string> expected = std::nullopt);

/// Idealized Shannon-Fano code for a query distribution.
struct CodeLengthTable {
  std::vector<Position> positions;  // i with p(i) > 0, ascending
  std::vector<double> lengths;      // -log2 p(i)
  std::vector<int> ceil_lengths;    // ceil(log2(1/p(i)))
  double entropy = 0.0;
  double kraft = 0.0;  // sum 2^-ceil_length
  double expected_ceil_length = 0.0;

  /// 2^-L(i), i.e. p(i); 0 for omitted positions.
  double weight(Position i) const;
};

CodeLengthTable shannon_fano_lengths(const std::vector<double>& distribution);
/// Code for the trace's average query distribution; requires T >= 1.
CodeLengthTable shannon_fano_lengths(const SimTrace& trace);

struct StepCheck {
  std::size_t t = 0;
  /// quantum: |<psi^x_t|psi^y_t> - <psi^x_{t+1}|psi^y_{t+1}>|;
  /// randomized: ||psi^x_{t+1} - psi^y_{t+1}||_1 - ||psi^x_t - psi^y_t||_1.
  double lhs = 0.0;
  /// 2 sum_{x_i != y_i} sqrt(p^x_t p^y_t) or 2 sum min(p^x_t, p^y_t).
  double rhs = 0.0;
  bool pass = true;
};

struct DivergenceReport {
  Model model = Model::quantum;
  std::vector<Position> diff;
  std::vector<StepCheck> steps;
  /// 2T sum sqrt(pbar^x pbar^y) (or min) against 1 - 2 sqrt(eps(1-eps)) (or 1 - 2 eps).
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool aggregate_pass = true;
  /// The eps actually used: the requested one, or the measured error when smaller.
  double eps = 0.0;
  std::optional<double> measured_eps;
  /// Final-state separation, |<psi^x|psi^y>| (quantum) or l1 distance (randomized).
  double final_overlap = 0.0;
  /// pass, fail, vacuous (inputs equal or same reference output), or
  /// precondition-unmet (the algorithm does not eps-compute the reference).
  std::string status;
  std::string detail;
  SimTrace trace_x;
  SimTrace trace_y;
};

inline constexpr double kDivergenceTolerance = 1e-9;

DivergenceReport divergence_report(const QueryAlgorithm& alg, const InputString& x, const InputString& y,
                                   double eps, const FunctionTable* reference = nullptr);

struct ProxyBoundCheck {
  double bound = 0.0;     // C (1 - 2 sqrt(eps(1-eps))) / sum 2^{-(L_x + L_y)/2}, or the randomized form
  double constant = 0.5;  // C
  double denominator = 0.0;
  std::size_t queries = 0;
  bool satisfied = false;  // T >= bound - 1e-9
};

/// Code lengths stand in for K(i | x, A), so 2^-L = pbar.
ProxyBoundCheck theorem1_bound(const SimTrace& trace_x, const SimTrace& trace_y, Model model, double eps);

/// Grover search over positions 1..n (n a power of two, n >= 2) with t
/// oracle calls; the final step copies the query register into the work
/// register, whose labels are "0".."n".
QueryAlgorithm make_grover(std::size_t n, std::size_t t);

enum class SamplerStrategy { scan, uniform };
SamplerStrategy parse_sampler_strategy(std::string_view text);

/// Randomized OR-finder: t queries at positions 1..t (scan, t <= n) or
/// uniform with replacement; the work bit accumulates the OR.
QueryAlgorithm make_classical_sampler(std::size_t n, std::size_t t, SamplerStrategy strategy);

/// Function the Grover built-in computes: "0" on 0^n, "j" on e_j.
FunctionTable index_search(std::size_t n);
/// OR over all of {0,1}^n (n <= 20).
FunctionTable or_total(std::size_t n);

}  // namespace qbound
