#include "qbound/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <set>
#include <sstream>

#include "qbound/certificates.hpp"
#include "qbound/errors.hpp"
#include "qbound/spectral.hpp"

namespace qbound {

namespace {

using Clock = std::chrono::steady_clock;

Json value_json(const BoundValue& v) {
  Json j{{"value", v.value}, {"exactness", std::string(to_string(v.exactness))}};
  if (v.exact) j[v.exactness == Exactness::radical_of_rational ? "radicand" : "exact"] = to_string(*v.exact);
  return j;
}

Json witness_json(const FunctionTable& f, const Witness& w) {
  return {{"x", f.input(w.x).to_string()}, {"y", f.input(w.y).to_string()}, {"i", w.i}};
}

Json verdict_json(const FunctionTable& f, const ValidationVerdict& v) {
  Json list = Json::array();
  for (const auto& viol : v.violations) {
    Json j{{"kind", viol.kind}, {"detail", viol.detail}};
    if (viol.x < f.size()) j["x"] = f.input(viol.x).to_string();
    if (viol.y < f.size()) j["y"] = f.input(viol.y).to_string();
    if (viol.i) j["i"] = *viol.i;
    list.push_back(std::move(j));
  }
  return {{"valid", v.valid()}, {"convention", v.convention}, {"violations", list}};
}

Json method_entry(const std::string& method, std::string_view model, const BoundValue& v) {
  Json j{{"method", method}, {"model", std::string(model)}};
  j.update(value_json(v));
  return j;
}

Json method_error(const std::string& method, const std::string& kind, const std::string& message) {
  return {{"method", method}, {"error", {{"kind", kind}, {"message", message}}}};
}

FunctionTable load_source_function(const FunctionSource& src, Json& descriptor) {
  if (src.file) {
    FunctionTable f = load_function(read_json_file(*src.file));
    descriptor = {{"source", "file"}, {"path", src.file->string()}};
    return f;
  }
  if (!src.family) throw DomainError("give --function FILE or --family NAME --n N");
  if (is_graph_family(*src.family)) {
    throw DomainError("family '" + *src.family + "' is an instance pair; bounds need a function table");
  }
  FamilyInstance inst = make_family(*src.family, src.n, src.seed);
  descriptor = {{"source", "family"}, {"family", *src.family}};
  return std::get<FunctionTable>(std::move(inst));
}

void describe_function(const FunctionTable& f, Json& descriptor) {
  std::set<std::string> outputs(f.outputs().begin(), f.outputs().end());
  descriptor["n"] = f.n();
  descriptor["alphabet_size"] = f.alphabet().size;
  descriptor["domain_size"] = f.size();
  descriptor["distinct_outputs"] = outputs.size();
  descriptor["boolean"] = f.is_boolean();
}

Json ceiling_entry(const FunctionTable& f) {
  if (f.n() > kMaxCertificateLength) {
    return method_error("ceiling", "refused",
                        "certificate search is limited to n <= " + std::to_string(kMaxCertificateLength));
  }
  const CertificateReport c = certificate_report(f);
  Json j{{"method", "ceiling"}, {"model", "quantum"}, {"value", c.ceiling}};
  // min(sqrt(n c0), sqrt(n c1)) = sqrt(n min(c0, c1)).
  const BoundValue exact = BoundValue::sqrt_of(Rational(f.n() * std::min(c.c0, c.c1)));
  j.update(value_json(exact));
  j["parameters"] = {{"c0", c.c0}, {"c1", c.c1}, {"n", f.n()}};
  return j;
}

const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "parse";
  if (dynamic_cast<const DomainError*>(&e)) return "domain";
  if (dynamic_cast<const NumericalError*>(&e)) return "numerical";
  return "internal";
}

int exit_for(const std::exception& e) {
  return dynamic_cast<const ParseError*>(&e) || dynamic_cast<const DomainError*>(&e) ? kExitInvalid : kExitInternal;
}

Json base_report(const std::string& command) {
  return {{"schema", kReportSchema}, {"tool_version", kToolVersion}, {"command", command}};
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool wants(const std::vector<std::string>& methods, const std::string& m) {
  return std::find(methods.begin(), methods.end(), m) != methods.end();
}

const std::vector<std::string> kMethods = {"unweighted", "weighted", "spectral", "scheme", "distance", "ceiling"};

Json code_table_json(const CodeLengthTable& c) {
  Json rows = Json::array();
  for (std::size_t k = 0; k < c.positions.size(); ++k) {
    rows.push_back({{"i", c.positions[k]}, {"length", c.lengths[k]}, {"ceil_length", c.ceil_lengths[k]}});
  }
  return {{"lengths", rows},
          {"entropy", c.entropy},
          {"kraft", c.kraft},
          {"expected_ceil_length", c.expected_ceil_length}};
}

Json trace_json(const SimTrace& t) {
  Json j{{"input", t.input.to_string()},
         {"queries", t.queries()},
         {"avg_qprob", t.avg_qprob},
         {"qprob", t.qprob},
         {"output_dist", t.output_dist}};
  double sum = 0.0;
  for (double v : t.avg_qprob) sum += v;
  j["avg_qprob_sum"] = sum;
  if (t.eps) j["error"] = *t.eps;
  if (t.queries() > 0) j["code"] = code_table_json(shannon_fano_lengths(t));
  return j;
}

}  // namespace

InputString parse_input_spec(std::string_view text, std::size_t n) {
  if (!text.empty() && (text.front() == 'e' || text.front() == 'E')) {
    const std::string digits(text.substr(1));
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw ParseError("bad unit-vector input '" + std::string(text) + "'");
    }
    const std::size_t j = std::stoul(digits);
    if (j < 1 || j > n) throw DomainError("unit vector e" + digits + " outside 1.." + std::to_string(n));
    return InputString::unit(n, j);
  }
  InputString x = InputString::parse(text);
  if (x.length() != n) {
    throw DomainError("input '" + std::string(text) + "' has length " + std::to_string(x.length()) + ", expected " +
                      std::to_string(n));
  }
  return x;
}

Json error_report(const std::string& command, const std::string& kind, const std::string& message) {
  Json r = base_report(command);
  r["error"] = {{"kind", kind}, {"message", message}};
  return r;
}

ReportResult bounds_report(const BoundsRequest& request, const CommonOptions& common) {
  const auto start = Clock::now();
  ReportResult out;
  Json& r = out.report;
  r = base_report("bounds");
  for (const auto& m : request.methods) {
    if (!wants(kMethods, m)) throw DomainError("unknown method '" + m + "'");
  }

  Json descriptor;
  auto f = std::make_shared<const FunctionTable>(load_source_function(request.function, descriptor));
  describe_function(*f, descriptor);
  r["function"] = descriptor;
  r["parameters"] = {{"tol", common.tol}, {"jobs", common.jobs}, {"methods", request.methods}};

  Json methods = Json::array();
  Json verifications = Json::array();
  auto guarded = [&](const std::string& method, auto&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      Json err = method_error(method, error_kind(e), e.what());
      if (auto* inv = dynamic_cast<const InvalidSchemeError*>(&e)) err["validation"] = verdict_json(*f, inv->verdict());
      methods.push_back(std::move(err));
      out.exit_code = std::max(out.exit_code, exit_for(e));
    }
  };

  // Shared inputs, loaded lazily so that unused files are never read.
  std::optional<WeightScheme> weights;
  auto get_weights = [&]() -> const WeightScheme& {
    if (!weights) {
      if (request.weights) {
        weights = load_weights(*f, read_json_file(*request.weights));
      } else if (request.relation) {
        weights = WeightScheme::unit_on(*f, load_relation(*f, read_json_file(*request.relation)));
      } else {
        weights = WeightScheme::unit_on(*f, default_relation(*f));
      }
    }
    return *weights;
  };
  std::optional<AdversaryMatrix> gamma;
  auto get_gamma = [&]() -> const AdversaryMatrix& {
    if (!gamma) {
      if (request.gamma) {
        gamma.emplace(f, load_gamma(*f, read_json_file(*request.gamma)));
      } else {
        const WeightScheme& w = get_weights();
        DenseMatrix g(f->size(), f->size(), 0.0);
        for (const auto& [k, v] : w.w) g(k.x, k.y) = to_double(v);
        gamma.emplace(f, std::move(g));
      }
    }
    return *gamma;
  };
  const SpectralOptions sopts{common.tol, common.jobs};

  if (wants(request.methods, "unweighted")) {
    guarded("unweighted", [&] {
      const Relation rel = request.relation ? load_relation(*f, read_json_file(*request.relation)) : default_relation(*f);
      const UnweightedBound b = unweighted_bound(*f, rel);
      Json j = method_entry("unweighted", "quantum", b.value);
      j["parameters"] = {{"m", b.m}, {"m_prime", b.m_prime}, {"l", b.l}, {"l_prime", b.l_prime}, {"pairs", rel.pairs.size()}};
      methods.push_back(std::move(j));
    });
  }
  if (wants(request.methods, "weighted")) {
    for (Model model : {Model::quantum, Model::randomized}) {
      guarded("weighted", [&] {
        const WeightScheme& s = get_weights();
        const ValidationVerdict v = validate_weight_scheme(*f, s, model);
        verifications.push_back({{"check", "weight-scheme-validity"}, {"model", std::string(to_string(model))},
                                 {"pass", v.valid()}, {"validation", verdict_json(*f, v)}});
        const WeightedBound b = weighted_bound(*f, s, model);
        Json j = method_entry("weighted", to_string(model), b.value);
        j["witness"] = witness_json(*f, b.witness);
        j["argmin_count"] = b.argmin.size();
        j["parameters"] = {{"W", to_string(weight_totals(*f, s).total)}, {"pair_convention", "ordered"}};
        methods.push_back(std::move(j));
      });
    }
  }
  if (wants(request.methods, "spectral")) {
    guarded("spectral", [&] {
      const SpectralBound b = spectral_bound(*f, get_gamma(), sopts);
      Json j = method_entry("spectral", "quantum", BoundValue::floating(b.value));
      j["parameters"] = {{"lambda", b.lambda}, {"lambda_by_position", b.lambda_by_position}, {"argmax", b.argmax}};
      methods.push_back(std::move(j));
    });
  }
  if (wants(request.methods, "scheme")) {
    for (Model model : {Model::quantum, Model::randomized}) {
      guarded("scheme", [&] {
        SchemeBound b;
        std::string source;
        if (request.prob_scheme) {
          b = probability_scheme_bound(*f, load_probability_scheme(*f, read_json_file(*request.prob_scheme)), model);
          source = "file";
        } else if (request.gamma) {
          b = probability_scheme_bound(*f, gamma_to_distributions(*f, get_gamma(), sopts), model);
          source = "gamma";
        } else {
          b = probability_scheme_bound(*f, scheme_to_distributions(*f, get_weights()), model);
          source = "weights";
        }
        Json j = method_entry("scheme", to_string(model), b.value);
        j["witness"] = witness_json(*f, b.witness);
        j["parameters"] = {{"source", source}};
        methods.push_back(std::move(j));
      });
    }
  }
  if (wants(request.methods, "distance")) {
    guarded("distance", [&] {
      DistanceScheme s;
      std::string source;
      if (request.distances) {
        s = load_distances(*f, read_json_file(*request.distances));
        source = "file";
      } else if (request.function.family &&
                 (*request.function.family == "ordered-search" || *request.function.family == "sorting")) {
        s = builtin_scheme(*request.function.family, request.function.n);
        source = "builtin";
      } else {
        throw DomainError("the distance method needs --distances FILE for this function");
      }
      const DistanceBounds b = distance_bounds(*f, s);
      const Json params{{"W_ordered", to_string(b.w_ordered)},
                        {"W_unordered", to_string(b.w_unordered)},
                        {"domain_size", f->size()},
                        {"max_rl", b.loads.max_rl},
                        {"max_ll", b.loads.max_ll},
                        {"max_rl_ll_product", b.loads.max_product},
                        {"source", source}};
      Json q = method_entry("distance", "quantum", b.quantum);
      q["witness"] = witness_json(*f, b.quantum_witness);
      q["parameters"] = params;
      Json rnd = method_entry("distance", "randomized", b.randomized);
      rnd["witness"] = witness_json(*f, b.randomized_witness);
      rnd["parameters"] = params;
      methods.push_back(std::move(q));
      methods.push_back(std::move(rnd));
    });
  }
  r["methods"] = methods;
  if (f->is_boolean()) {
    try {
      r["ceiling"] = ceiling_entry(*f);
    } catch (const std::exception& e) {
      r["ceiling"] = method_error("ceiling", error_kind(e), e.what());
      out.exit_code = std::max(out.exit_code, exit_for(e));
    }
    if (r["ceiling"].contains("error") && wants(request.methods, "ceiling")) {
      out.exit_code = std::max<int>(out.exit_code, kExitInvalid);
    }
  } else if (wants(request.methods, "ceiling")) {
    r["ceiling"] = method_error("ceiling", "domain", "certificate ceiling needs a boolean function");
    out.exit_code = std::max<int>(out.exit_code, kExitInvalid);
  }
  r["verifications"] = verifications;
  r["timing"] = {{"elapsed_ms", elapsed_ms(start)}};
  return out;
}

ReportResult divergence_report_document(const DivergenceRequest& request, const CommonOptions&) {
  const auto start = Clock::now();
  ReportResult out;
  Json& r = out.report;
  r = base_report("verify-divergence");

  std::optional<FunctionTable> reference;
  Json descriptor = nullptr;
  if (request.function.file || request.function.family) {
    if (request.function.family && is_graph_family(*request.function.family)) {
      throw DomainError("verify-divergence needs a function family, not an instance pair");
    }
    reference = load_source_function(request.function, descriptor);
  }

  std::optional<QueryAlgorithm> alg;
  Json alg_desc;
  if (request.algorithm_file) {
    alg = load_algorithm(read_json_file(*request.algorithm_file));
    alg_desc = {{"source", "file"}, {"path", request.algorithm_file->string()}};
  } else if (request.algorithm) {
    const std::size_t n = reference ? reference->n() : request.function.n;
    if (n == 0) throw DomainError("give --n or a --family/--function to size the built-in algorithm");
    if (*request.algorithm == "grover") {
      alg = make_grover(n, request.iters);
      reference = index_search(n);
      descriptor = {{"source", "builtin"}, {"name", "index-search"}};
    } else {
      alg = make_classical_sampler(n, request.iters, parse_sampler_strategy(*request.algorithm));
      reference = or_total(n);
      descriptor = {{"source", "builtin"}, {"name", "or"}};
    }
    alg_desc = {{"source", "builtin"}, {"name", *request.algorithm}, {"iters", request.iters}};
  } else {
    throw DomainError("give --algorithm NAME or --algorithm-file FILE");
  }
  alg_desc["model"] = std::string(to_string(alg->model()));
  alg_desc["n"] = alg->n();
  alg_desc["queries"] = alg->queries();
  alg_desc["state_dimension"] = alg->dim();
  alg_desc["kernel_isa"] = std::string(kernels::to_string(kernels::active_isa()));
  if (reference) describe_function(*reference, descriptor);
  r["algorithm"] = alg_desc;
  r["function"] = descriptor;

  const auto comma = request.pair.find(',');
  if (comma == std::string::npos) throw ParseError("--pair expects X,Y");
  const InputString x = parse_input_spec(request.pair.substr(0, comma), alg->n());
  const InputString y = parse_input_spec(request.pair.substr(comma + 1), alg->n());
  if (reference && (!reference->find(x) || !reference->find(y))) {
    throw DomainError("pair inputs must lie in the reference function's domain");
  }

  const DivergenceReport rep = divergence_report(*alg, x, y, request.eps, reference ? &*reference : nullptr);
  Json steps = Json::array();
  for (const auto& s : rep.steps) steps.push_back({{"t", s.t}, {"lhs", s.lhs}, {"rhs", s.rhs}, {"pass", s.pass}});
  const std::string claim = rep.model == Model::quantum ? "step-inner-product" : "step-l1";
  Json verifications = Json::array();
  verifications.push_back({{"check", claim}, {"steps", steps},
                           {"pass", std::all_of(rep.steps.begin(), rep.steps.end(), [](auto& s) { return s.pass; })}});
  verifications.push_back({{"check", "divergence-aggregate"},
                           {"lhs", rep.lhs},
                           {"rhs", rep.rhs},
                           {"margin", rep.margin},
                           {"pass", rep.aggregate_pass},
                           {"tolerance", kDivergenceTolerance}});
  Json proxy = nullptr;
  if (!rep.diff.empty() && alg->queries() > 0) {
    const ProxyBoundCheck th = theorem1_bound(rep.trace_x, rep.trace_y, rep.model, rep.eps);
    proxy = {{"check", "code-length-proxy"},
                {"bound", std::isfinite(th.bound) ? Json(th.bound) : Json("inf")},
                {"constant", th.constant},
                {"denominator", th.denominator},
                {"queries", th.queries},
                {"pass", th.satisfied}};
    verifications.push_back(proxy);
  }
  r["pair"] = {{"x", x.to_string()}, {"y", y.to_string()}, {"diff", rep.diff}};
  r["eps"] = {{"requested", request.eps}, {"used", rep.eps}};
  if (rep.measured_eps) r["eps"]["measured"] = *rep.measured_eps;
  r["status"] = rep.status;
  if (!rep.detail.empty()) r["detail"] = rep.detail;
  r["final_separation"] = rep.final_overlap;
  r["verifications"] = verifications;
  r["traces"] = {trace_json(rep.trace_x), trace_json(rep.trace_y)};
  r["timing"] = {{"elapsed_ms", elapsed_ms(start)}};
  if (rep.status == "fail" || (!proxy.is_null() && rep.status == "pass" && !proxy["pass"].get<bool>())) {
    out.exit_code = kExitInternal;
  }
  return out;
}

ReportResult family_document(const std::string& family, std::size_t n, std::uint64_t seed) {
  ReportResult out;
  FamilyInstance inst = make_family(family, n, seed);
  if (auto* f = std::get_if<FunctionTable>(&inst)) {
    out.report = to_json(*f);
  } else {
    const auto& g = std::get<GraphPair>(inst);
    out.report = to_json(g);
    out.report["G_bipartite"] = is_bipartite(g.pair.first, g.vertices);
    out.report["H_bipartite"] = is_bipartite(g.pair.second, g.vertices);
    out.report["G_components"] = component_count(g.pair.first, g.vertices);
    out.report["H_components"] = component_count(g.pair.second, g.vertices);
  }
  return out;
}

namespace {

std::string csv_cell(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.is_null() ? "" : v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return s;
}

Json get_or_null(const Json& j, const char* key) { return j.contains(key) ? j[key] : Json(nullptr); }

}  // namespace

std::string to_csv(const Json& report) {
  std::ostringstream os;
  if (report.contains("error") && !report.contains("methods")) {
    os << "error_kind,message\n" << csv_cell(report["error"]["kind"]) << "," << csv_cell(report["error"]["message"]) << "\n";
    return os.str();
  }
  if (report.contains("methods")) {
    os << "method,model,value,exactness,exact,radicand,error\n";
    auto row = [&](const Json& m) {
      os << csv_cell(get_or_null(m, "method")) << "," << csv_cell(get_or_null(m, "model")) << ","
         << csv_cell(get_or_null(m, "value")) << "," << csv_cell(get_or_null(m, "exactness")) << ","
         << csv_cell(get_or_null(m, "exact")) << "," << csv_cell(get_or_null(m, "radicand")) << ","
         << csv_cell(m.contains("error") ? m["error"]["message"] : Json(nullptr)) << "\n";
    };
    for (const auto& m : report["methods"]) row(m);
    if (report.contains("ceiling")) row(report["ceiling"]);
    return os.str();
  }
  if (report.contains("verifications")) {
    os << "check,t,lhs,rhs,pass\n";
    for (const auto& v : report["verifications"]) {
      if (v.contains("steps")) {
        for (const auto& s : v["steps"]) {
          os << csv_cell(v["check"]) << "," << s["t"] << "," << csv_cell(s["lhs"]) << "," << csv_cell(s["rhs"]) << ","
             << s["pass"] << "\n";
        }
      } else if (v.contains("lhs")) {
        os << csv_cell(v["check"]) << ",," << csv_cell(v["lhs"]) << "," << csv_cell(v["rhs"]) << "," << v["pass"] << "\n";
      } else {
        os << csv_cell(v["check"]) << ",," << csv_cell(v["queries"]) << "," << csv_cell(v["bound"]) << ","
           << v["pass"] << "\n";
      }
    }
    return os.str();
  }
  if (report.contains("entries")) {
    os << "input,output\n";
    for (const auto& e : report["entries"]) os << csv_cell(e["input"]) << "," << csv_cell(e["output"]) << "\n";
    return os.str();
  }
  if (report.contains("G")) {
    os << "graph,adjacency\nG," << csv_cell(report["G"]) << "\nH," << csv_cell(report["H"]) << "\n";
    return os.str();
  }
  return os.str();
}

}  // namespace qbound
