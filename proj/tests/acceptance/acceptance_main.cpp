// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "distance_oracle.hpp"
#include "qbound/adversary_schemes.hpp"
#include "qbound/certificates.hpp"
#include "qbound/distance_schemes.hpp"
#include "qbound/families.hpp"
#include "qbound/simulator.hpp"
#include "qbound/spectral.hpp"
#include "test_support.hpp"

using namespace qbound;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::size_t checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::shared_ptr<const FunctionTable> shared(FunctionTable f) { return std::make_shared<const FunctionTable>(std::move(f)); }

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Criterion 1: search/OR consistency.
Outcome or_consistency() {
  Outcome o;
  for (std::size_t n : {2, 4, 9, 16}) {
    const auto f = shared(or_promise(n));
    const Relation r = default_relation(*f);
    const double root = std::sqrt(static_cast<double>(n));
    const std::string tag = "n=" + std::to_string(n);
    o.expect(std::abs(unweighted_bound(*f, r).value.value - root) <= 1e-6, tag + " unweighted");
    const WeightScheme unit = WeightScheme::unit_on(*f, r);
    o.expect(std::abs(weighted_bound(*f, unit, Model::quantum).value.value - root) <= 1e-6, tag + " weighted");
    o.expect(std::abs(spectral_bound(*f, AdversaryMatrix::unit(f)).value - root) <= 1e-6, tag + " spectral");
    const BoundValue rnd = weighted_bound(*f, unit, Model::randomized).value;
    o.expect(rnd.exact && *rnd.exact == Rational(static_cast<long>(n)), tag + " randomized != n");
  }
  return o;
}

// Criterion 2: spectral bound below the certificate ceiling on every 3-bit function.
Outcome ceiling_dominance() {
  Outcome o;
  std::mt19937_64 rng(2024);
  for (unsigned truth = 0; truth < 256; ++truth) {
    const auto f = shared(test::total_boolean(3, truth));
    const double ceiling = adversary_ceiling(*f);
    for (Index x = 0; x < f->size(); ++x) {
      for (Index y = 0; y < f->size(); ++y) {
        if (f->same_output(x, y)) continue;
        bool ok = false;
        try {
          const Position i = certificate_difference_index(*f, f->input(x), f->input(y));
          ok = f->input(x).at(i) != f->input(y).at(i);
        } catch (const std::exception&) {
        }
        o.expect(ok, "difference index failed for truth table " + std::to_string(truth));
      }
    }
    if (truth == 0 || truth == 255) continue;
    for (int k = 0; k < 20; ++k) {
      DenseMatrix g = test::random_gamma(*f, rng);
      while (std::all_of(g.values().begin(), g.values().end(), [](double v) { return v == 0.0; })) {
        g = test::random_gamma(*f, rng);
      }
      const double s = spectral_bound(*f, AdversaryMatrix(f, g)).value;
      o.expect(s <= ceiling + 1e-6, "truth table " + std::to_string(truth) + ": " + num(s) + " > " + num(ceiling));
    }
  }
  return o;
}

// Criterion 3: ordered search closed form.
Outcome ordered_search_values() {
  Outcome o;
  for (unsigned n = 2; n <= 64; ++n) {
    const FunctionTable f = ordered_search(n);
    const DistanceBounds b = distance_bounds(f, builtin_scheme("ordered-search", n));
    const Rational cf = test::ordered_search_closed_form(n);
    const std::string tag = "n=" + std::to_string(n);
    o.expect(b.w_unordered == test::ordered_search_w_oracle(n), tag + " W mismatch");
    o.expect(b.randomized.exact && *b.randomized.exact == cf, tag + " randomized value");
    o.expect(b.quantum.exact && *b.quantum.exact == cf * cf, tag + " quantum radicand");
    if (n == 64) {
      const double ratio = b.quantum.value / std::log(64.0);
      o.expect(ratio >= 0.85 && ratio <= 1.15, "value/ln(64) = " + num(ratio));
    }
  }
  return o;
}

// Criterion 4: sorting against full enumeration.
Outcome sorting_values() {
  Outcome o;
  for (unsigned n : {3u, 4u, 5u}) {
    const FunctionTable f = sorting(n);
    const DistanceBounds b = distance_bounds(f, builtin_scheme("sorting", n));
    const test::OracleScheme ref = test::sorting_oracle(n);
    const std::string tag = "n=" + std::to_string(n);
    o.expect(ref.domain == f.size(), tag + " domain size");
    o.expect(b.w_unordered == ref.w_unordered, tag + " W mismatch");
    o.expect(ref.min_load == 2 && ref.max_load == 2, tag + " oracle loads not all 2");
    for (const auto& [key, load] : b.loads.rl) o.expect(load == 2, tag + " RL != 2");
    for (const auto& [key, load] : b.loads.ll) o.expect(load == 2, tag + " LL != 2");
    o.expect(b.loads.max_product == ref.max_product, tag + " max RL*LL");
    const Rational avg = ref.w_unordered / Rational(static_cast<long>(ref.domain));
    const Rational radicand = avg * avg / Rational(static_cast<long>(ref.max_product));
    o.expect(b.quantum.exact && *b.quantum.exact == radicand, tag + " quantum radicand");
    if (n == 3) o.expect(b.quantum.exact && *b.quantum.exact == Rational(25, 16), "n=3 value != 5/4");
  }
  return o;
}

// The smallest eps for which the final states are eps-separated; the
// aggregate inequality then holds with no further premise.
double separation_eps(Model model, double final_separation) {
  if (model == Model::quantum) {
    const double o = std::min(1.0, final_separation);
    return 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - o * o)));
  }
  return std::max(0.0, 0.5 * (1.0 - final_separation));
}

struct DivergenceRun {
  DivergenceReport report;
  ProxyBoundCheck proxy;
};

std::vector<DivergenceRun> divergence_runs;

void check_pair(Outcome& o, const QueryAlgorithm& alg, const InputString& x, const InputString& y,
                const std::string& tag) {
  const DivergenceReport probe = divergence_report(alg, x, y, 0.0);
  for (const StepCheck& s : probe.steps) o.expect(s.pass, tag + " step " + std::to_string(s.t));
  const double eps = separation_eps(alg.model(), probe.final_overlap);
  if (eps >= 0.5) return;  // identical final states: only the per-step claims apply
  DivergenceReport rep = divergence_report(alg, x, y, eps);
  o.expect(rep.status == "pass", tag + " status " + rep.status + " margin " + num(rep.margin));
  ProxyBoundCheck t1 = theorem1_bound(rep.trace_x, rep.trace_y, alg.model(), rep.eps);
  divergence_runs.push_back({std::move(rep), t1});
}

// Criterion 5: per-step claims and the aggregate inequality.
Outcome divergence_checks() {
  Outcome o;
  divergence_runs.clear();
  for (std::size_t n : {4, 8, 16}) {
    const auto tmax = static_cast<std::size_t>(std::floor(M_PI / 4.0 * std::sqrt(static_cast<double>(n))));
    for (std::size_t t = 1; t <= tmax; ++t) {
      const QueryAlgorithm g = make_grover(n, t);
      for (std::size_t j = 1; j <= n; ++j) {
        for (std::size_t k = j + 1; k <= n; ++k) {
          check_pair(o, g, InputString::unit(n, j), InputString::unit(n, k),
                     "grover n=" + std::to_string(n) + " t=" + std::to_string(t) + " (" + std::to_string(j) + "," +
                         std::to_string(k) + ")");
        }
      }
    }
  }
  for (std::size_t n : {2, 4, 8}) {
    std::vector<InputString> inputs{InputString::zeros(n)};
    for (std::size_t j = 1; j <= n; ++j) inputs.push_back(InputString::unit(n, j));
    for (SamplerStrategy strategy : {SamplerStrategy::scan, SamplerStrategy::uniform}) {
      for (std::size_t t = 1; t <= n; ++t) {
        const QueryAlgorithm alg = make_classical_sampler(n, t, strategy);
        for (std::size_t a = 0; a < inputs.size(); ++a) {
          for (std::size_t b = a + 1; b < inputs.size(); ++b) {
            check_pair(o, alg, inputs[a], inputs[b],
                       std::string(strategy == SamplerStrategy::scan ? "scan" : "uniform") +
                           " n=" + std::to_string(n) + " t=" + std::to_string(t));
          }
        }
      }
    }
  }
  const QueryAlgorithm g4 = make_grover(4, 1);
  const DivergenceReport eq = divergence_report(g4, InputString::unit(4, 1), InputString::unit(4, 2), 0.0);
  o.expect(eq.status == "pass" && std::abs(eq.margin) < 1e-9, "grover n=4 t=1 margin " + num(eq.margin));
  return o;
}

// Criterion 6: code-length proxy over every run of criterion 5.
Outcome proxy_checks() {
  Outcome o;
  o.expect(!divergence_runs.empty(), "no runs recorded");
  for (const DivergenceRun& r : divergence_runs) {
    o.expect(r.proxy.satisfied, "proxy bound " + num(r.proxy.bound) + " exceeds T = " +
                                       std::to_string(r.proxy.queries));
    for (const SimTrace* tr : {&r.report.trace_x, &r.report.trace_y}) {
      const CodeLengthTable c = shannon_fano_lengths(*tr);
      o.expect(c.kraft <= 1.0 + 1e-9, "Kraft sum " + num(c.kraft));
      double total = 0.0;
      for (double p : tr->avg_qprob) total += p;
      o.expect(std::abs(total - 1.0) <= 1e-9, "average query mass " + num(total));
    }
  }
  return o;
}

// Criterion 7: probability schemes reproduce the weighted and spectral bounds.
Outcome scheme_equivalence() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::size_t instances = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const FunctionTable f = test::random_function(3, rng);
    if (!test::has_distinct_outputs(f)) continue;
    const WeightScheme s = test::random_tight_scheme(f, rng);
    if (s.w.empty()) continue;
    const ExactProbabilityScheme ps = scheme_to_distributions(f, s);
    const BoundValue a = probability_scheme_bound(f, ps, Model::quantum).value;
    const BoundValue b = weighted_bound(f, s, Model::quantum).value;
    o.expect(a.exact && b.exact && *a.exact == *b.exact, "trial " + std::to_string(trial) + " exact mismatch");
    ++instances;
  }
  o.expect(instances >= 50, "too few random instances");
  for (std::size_t n : {2, 4, 9, 16}) {
    const auto f = shared(or_promise(n));
    const AdversaryMatrix g = AdversaryMatrix::unit(f);
    const double spectral = spectral_bound(*f, g).value;
    const double scheme = probability_scheme_bound(*f, gamma_to_distributions(*f, g), Model::quantum).value.value;
    o.expect(std::abs(spectral - scheme) <= 1e-6, "star n=" + std::to_string(n) + ": " + num(scheme) + " vs " +
                                                       num(spectral));
  }
  return o;
}

// Criterion 8: graph instance pairs.
Outcome graph_pairs() {
  Outcome o;
  for (std::size_t v : {6, 10, 20}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const std::string tag = "v=" + std::to_string(v) + " seed=" + std::to_string(seed);
      const GraphPair bp = bipartiteness_pair(v, seed);
      o.expect(differing_edges(bp.pair.first, bp.pair.second, v) == 1, tag + " bipartiteness edge count");
      o.expect(is_bipartite(bp.pair.first, v) && !is_bipartite(bp.pair.second, v), tag + " bipartiteness");
      const GraphPair cp = connectivity_pair(v, seed);
      o.expect(differing_edges(cp.pair.first, cp.pair.second, v) == 4, tag + " connectivity edge count");
      o.expect(component_count(cp.pair.first, v) == 1 && component_count(cp.pair.second, v) == 2,
               tag + " components");
    }
  }
  return o;
}

double largest_root_2x2(double a, double b, double d) {
  return 0.5 * (a + d) + std::sqrt(0.25 * (a - d) * (a - d) + b * b);
}

// Criterion 9: power-iteration soundness.
Outcome solver_soundness() {
  Outcome o;
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const std::size_t dim = 1 + rng() % 200;
    const double density = 0.1 + 0.9 * u(rng);
    DenseMatrix m(dim, dim, 0.0);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = r; c < dim; ++c) {
        if (u(rng) < density) m(r, c) = m(c, r) = u(rng);
      }
    }
    const EigenResult e = principal_eigen(m, 1e-10);
    // Residual recomputed independently of the kernels.
    double res = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < dim; ++c) acc += m(r, c) * e.vector[c];
      res += (acc - e.value * e.vector[r]) * (acc - e.value * e.vector[r]);
    }
    o.expect(std::sqrt(res) <= 1e-10, "dim " + std::to_string(dim) + " residual " + num(std::sqrt(res)));
  }
  for (int k = 0; k < 200; ++k) {
    DenseMatrix m(2, 2);
    m(0, 0) = 5 * u(rng);
    m(1, 1) = 5 * u(rng);
    m(0, 1) = m(1, 0) = k % 10 == 0 ? 0.0 : 5 * u(rng);
    const double expect = largest_root_2x2(m(0, 0), m(0, 1), m(1, 1));
    o.expect(std::abs(principal_eigen(m).value - expect) <= 1e-9, "2x2 oracle");
  }
  for (std::size_t leaves = 1; leaves <= 60; ++leaves) {
    DenseMatrix m(leaves + 1, leaves + 1, 0.0);
    double sq = 0.0;
    for (std::size_t j = 1; j <= leaves; ++j) {
      const double s = 5 * u(rng);
      m(0, j) = m(j, 0) = s;
      sq += s * s;
    }
    o.expect(std::abs(principal_eigen(m).value - std::sqrt(sq)) <= 1e-9, "star oracle");
  }
  return o;
}

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"1 search/OR consistency", 5, or_consistency},
      {"2 certificate ceiling", 120, ceiling_dominance},
      {"3 ordered search", 10, ordered_search_values},
      {"4 sorting", 30, sorting_values},
      {"5 divergence claims", 60, divergence_checks},
      {"6 code-length proxy", 60, proxy_checks},
      {"7 scheme equivalence", 60, scheme_equivalence},
      {"8 graph instances", 5, graph_pairs},
      {"9 solver soundness", 60, solver_soundness},
  };
  bool all = true;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && secs > c.budget_seconds) {
      o.pass = false;
      o.detail = "over time budget of " + num(c.budget_seconds) + " s";
    }
    all = all && o.pass;
    std::printf("%s criterion %s: %zu checks, %.3f s%s%s\n", o.pass ? "PASS" : "FAIL", c.name, o.checks, secs,
                o.detail.empty() ? "" : " | ", o.detail.c_str());
  }
  return all ? 0 : 1;
}
