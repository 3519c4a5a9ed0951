#include "qbound/documents.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "qbound/errors.hpp"

namespace qbound {

namespace {

const Json& field(const Json& doc, const char* name, const char* where) {
  if (!doc.is_object()) throw ParseError(std::string(where) + ": expected an object");
  auto it = doc.find(name);
  if (it == doc.end()) throw ParseError(std::string(where) + ": missing field '" + name + "'");
  return *it;
}

const Json& list_field(const Json& doc, const char* name, const char* where) {
  const Json& v = field(doc, name, where);
  if (!v.is_array()) throw ParseError(std::string(where) + ": field '" + name + "' must be a list");
  return v;
}

/// Optional list field; absent means empty.
const Json& optional_list(const Json& doc, const char* name, const char* where) {
  static const Json empty = Json::array();
  if (!doc.is_object()) throw ParseError(std::string(where) + ": expected an object");
  auto it = doc.find(name);
  if (it == doc.end()) return empty;
  if (!it->is_array()) throw ParseError(std::string(where) + ": field '" + name + "' must be a list");
  return *it;
}

std::size_t as_size(const Json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ParseError(std::string(what) + " must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

std::string as_string(const Json& v, const char* what) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  throw ParseError(std::string(what) + " must be a string");
}

Rational as_rational(const Json& v, const char* what) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return parse_rational(v.dump());
  if (v.is_number_float()) return parse_rational(v.dump());
  throw ParseError(std::string(what) + " must be a number or a \"p/q\" string");
}

double as_double(const Json& v, const char* what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
  throw ParseError(std::string(what) + " must be a number");
}

Index input_index(const FunctionTable& f, const Json& v, const char* what) {
  const std::string text = as_string(v, what);
  const InputString x = InputString::parse(text);
  auto k = f.find(x);
  if (!k) throw DomainError(std::string(what) + " '" + text + "' is not in the function's domain");
  return *k;
}

Position position(const FunctionTable& f, const Json& v) {
  const std::size_t i = as_size(v, "position i");
  if (i < 1 || i > f.n()) throw DomainError("position " + std::to_string(i) + " outside 1.." + std::to_string(f.n()));
  return i;
}

cplx as_complex(const Json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ParseError("matrix entry must be a number or an [re, im] pair");
}

template <class T, class Conv>
Matrix<T> load_matrix(const Json& doc, std::size_t dim, Conv conv) {
  if (!doc.is_array()) throw ParseError("transform must be a list");
  Matrix<T> m(dim, dim);
  // Rows have dim entries, the flat form dim^2; only dim = 1 needs a tiebreak.
  const bool rows = dim > 1 ? doc.size() == dim : (doc.size() == 1 && doc[0].is_array() && doc[0].size() == 1);
  if (rows) {
    for (std::size_t r = 0; r < dim; ++r) {
      if (!doc[r].is_array() || doc[r].size() != dim) throw ParseError("transform row has the wrong length");
      for (std::size_t c = 0; c < dim; ++c) m(r, c) = conv(doc[r][c]);
    }
    return m;
  }
  if (doc.size() != dim * dim) throw ParseError("transform must have " + std::to_string(dim * dim) + " entries");
  for (std::size_t k = 0; k < dim * dim; ++k) m(k / dim, k % dim) = conv(doc[k]);
  return m;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

FunctionTable load_function(const Json& doc) {
  const char* where = "function table";
  const std::size_t sigma = as_size(field(doc, "alphabet_size", where), "alphabet_size");
  const std::size_t n = as_size(field(doc, "n", where), "n");
  if (sigma < 1 || sigma > 10) throw DomainError("alphabet_size must be in 1..10");
  std::vector<FunctionTable::Entry> entries;
  for (const Json& e : list_field(doc, "entries", where)) {
    entries.push_back({InputString::parse(as_string(field(e, "input", "entry"), "input")),
                       as_string(field(e, "output", "entry"), "output")});
  }
  return FunctionTable(Alphabet{static_cast<std::uint32_t>(sigma)}, n, std::move(entries));
}

Json to_json(const FunctionTable& f) {
  std::vector<Index> order(f.size());
  for (Index k = 0; k < f.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return f.input(a) < f.input(b); });
  Json entries = Json::array();
  for (Index k : order) entries.push_back({{"input", f.input(k).to_string()}, {"output", f.output(k)}});
  return {{"alphabet_size", f.alphabet().size}, {"n", f.n()}, {"entries", entries}};
}

Relation load_relation(const FunctionTable& f, const Json& doc) {
  Relation r;
  for (const Json& p : list_field(doc, "pairs", "relation")) {
    r.pairs.emplace_back(input_index(f, field(p, "x", "pair"), "x"), input_index(f, field(p, "y", "pair"), "y"));
  }
  return r;
}

WeightScheme load_weights(const FunctionTable& f, const Json& doc) {
  WeightScheme s;
  for (const Json& p : optional_list(doc, "pairs", "weights")) {
    const PairKey key{input_index(f, field(p, "x", "pair"), "x"), input_index(f, field(p, "y", "pair"), "y")};
    if (s.w.count(key)) throw DomainError("weights list the pair (" + f.input(key.x).to_string() + ", " +
                                          f.input(key.y).to_string() + ") twice");
    const Rational w = as_rational(field(p, "w", "pair"), "w");
    if (w != 0) s.w[key] = w;
  }
  for (const Json& t : optional_list(doc, "triples", "weights")) {
    const TripleKey key{input_index(f, field(t, "x", "triple"), "x"), input_index(f, field(t, "y", "triple"), "y"),
                        position(f, field(t, "i", "triple"))};
    if (s.wprime.count(key)) throw DomainError("weights list a triple twice");
    const Rational w = as_rational(field(t, "wprime", "triple"), "wprime");
    if (w != 0) s.wprime[key] = w;
  }
  return s;
}

Json to_json(const FunctionTable& f, const WeightScheme& s) {
  Json pairs = Json::array(), triples = Json::array();
  for (const auto& [k, w] : s.w) {
    pairs.push_back({{"x", f.input(k.x).to_string()}, {"y", f.input(k.y).to_string()}, {"w", to_string(w)}});
  }
  for (const auto& [k, w] : s.wprime) {
    triples.push_back(
        {{"x", f.input(k.x).to_string()}, {"y", f.input(k.y).to_string()}, {"i", k.i}, {"wprime", to_string(w)}});
  }
  return {{"pairs", pairs}, {"triples", triples}};
}

ExactProbabilityScheme load_probability_scheme(const FunctionTable& f, const Json& doc) {
  const char* where = "probability scheme";
  ExactProbabilityScheme ps;
  ps.p.assign(f.size(), Rational(0));
  for (const Json& e : list_field(doc, "q", where)) {
    const PairKey key{input_index(f, field(e, "x", "q entry"), "x"), input_index(f, field(e, "y", "q entry"), "y")};
    const Rational v = as_rational(field(e, "value", "q entry"), "q value");
    if (v != 0) ps.q[key] += v;
  }
  for (const Json& e : list_field(doc, "p", where)) {
    ps.p[input_index(f, field(e, "x", "p entry"), "x")] += as_rational(field(e, "value", "p entry"), "p value");
  }
  for (const Json& e : list_field(doc, "pprime", where)) {
    const Index x = input_index(f, field(e, "x", "pprime entry"), "x");
    const Position i = position(f, field(e, "i", "pprime entry"));
    const Index y = input_index(f, field(e, "y", "pprime entry"), "y");
    ps.pprime[{x, i}][y] += as_rational(field(e, "value", "pprime entry"), "pprime value");
  }
  return ps;
}

Json to_json(const FunctionTable& f, const ExactProbabilityScheme& ps) {
  Json q = Json::array(), p = Json::array(), pp = Json::array();
  for (const auto& [k, v] : ps.q) {
    q.push_back({{"x", f.input(k.x).to_string()}, {"y", f.input(k.y).to_string()}, {"value", to_string(v)}});
  }
  for (Index x = 0; x < ps.p.size(); ++x) {
    if (ps.p[x] != 0) p.push_back({{"x", f.input(x).to_string()}, {"value", to_string(ps.p[x])}});
  }
  for (const auto& [key, dist] : ps.pprime) {
    for (const auto& [y, v] : dist) {
      pp.push_back({{"x", f.input(key.first).to_string()},
                    {"i", key.second},
                    {"y", f.input(y).to_string()},
                    {"value", to_string(v)}});
    }
  }
  return {{"q", q}, {"p", p}, {"pprime", pp}};
}

DenseMatrix load_gamma(const FunctionTable& f, const Json& doc) {
  DenseMatrix g(f.size(), f.size(), 0.0);
  std::set<std::pair<Index, Index>> listed;
  for (const Json& e : list_field(doc, "entries", "gamma")) {
    const Index x = input_index(f, field(e, "x", "gamma entry"), "x");
    const Index y = input_index(f, field(e, "y", "gamma entry"), "y");
    const double v = as_double(field(e, "value", "gamma entry"), "gamma value");
    if (!listed.insert({x, y}).second) {
      throw DomainError("gamma lists (" + f.input(x).to_string() + ", " + f.input(y).to_string() + ") twice");
    }
    if (listed.count({y, x}) && x != y && g(y, x) != v) {
      throw DomainError("gamma gives conflicting values for (" + f.input(x).to_string() + ", " +
                        f.input(y).to_string() + ") and its transpose");
    }
    g(x, y) = v;
    g(y, x) = v;
  }
  return g;
}

DistanceScheme load_distances(const FunctionTable& f, const Json& doc) {
  std::vector<DistanceScheme::Entry> defining;
  for (const Json& e : list_field(doc, "entries", "distances")) {
    const Index x = input_index(f, field(e, "x", "distance entry"), "x");
    const Index y = input_index(f, field(e, "y", "distance entry"), "y");
    const std::size_t d = as_size(field(e, "d", "distance entry"), "d");
    defining.push_back({x, y, static_cast<unsigned>(d)});
  }
  return DistanceScheme(f.size(), defining);
}

QueryAlgorithm load_algorithm(const Json& doc) {
  const char* where = "algorithm";
  const Model model = parse_model(as_string(field(doc, "model", where), "model"));
  const std::size_t n = as_size(field(doc, "n", where), "n");
  const std::size_t sigma = as_size(field(doc, "alphabet_size", where), "alphabet_size");
  const std::size_t work = as_size(field(doc, "work_dim", where), "work_dim");
  if (sigma < 1 || sigma > 10) throw DomainError("alphabet_size must be in 1..10");
  const std::size_t dim = (n + 1) * sigma * work;
  if (n == 0 || work == 0 || dim > kMaxStateDimension) throw DomainError("algorithm dimensions out of range");

  const Json& ex_doc = field(doc, "output_extractor", where);
  OutputExtractor ex;
  ex.block_size = as_size(field(ex_doc, "block_size", "output_extractor"), "block_size");
  for (const Json& l : list_field(ex_doc, "labels", "output_extractor")) ex.labels.push_back(as_string(l, "label"));

  const Json& ts = list_field(doc, "transforms", where);
  const Alphabet alphabet{static_cast<std::uint32_t>(sigma)};
  if (model == Model::quantum) {
    std::vector<ComplexMatrix> us;
    for (const Json& t : ts) us.push_back(load_matrix<cplx>(t, dim, as_complex));
    return QueryAlgorithm::quantum(n, alphabet, work, std::move(us), std::move(ex));
  }
  std::vector<DenseMatrix> us;
  for (const Json& t : ts) us.push_back(load_matrix<double>(t, dim, [](const Json& v) { return as_double(v, "entry"); }));
  return QueryAlgorithm::randomized(n, alphabet, work, std::move(us), std::move(ex));
}

Json to_json(const QueryAlgorithm& alg) {
  Json transforms = Json::array();
  const std::size_t d = alg.dim();
  if (alg.model() == Model::quantum) {
    for (const auto& u : alg.unitaries()) {
      Json rows = Json::array();
      for (std::size_t r = 0; r < d; ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < d; ++c) row.push_back(Json::array({u(r, c).real(), u(r, c).imag()}));
        rows.push_back(std::move(row));
      }
      transforms.push_back(std::move(rows));
    }
  } else {
    for (const auto& u : alg.stochastic()) {
      Json rows = Json::array();
      for (std::size_t r = 0; r < d; ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < d; ++c) row.push_back(u(r, c));
        rows.push_back(std::move(row));
      }
      transforms.push_back(std::move(rows));
    }
  }
  return {{"model", std::string(to_string(alg.model()))},
          {"n", alg.n()},
          {"alphabet_size", alg.alphabet().size},
          {"work_dim", alg.work_dim()},
          {"transforms", transforms},
          {"output_extractor", {{"block_size", alg.extractor().block_size}, {"labels", alg.extractor().labels}}}};
}

Json to_json(const GraphPair& g) {
  return {{"family", g.family},
          {"vertices", g.vertices},
          {"seed", g.seed},
          {"G", g.pair.first.to_string()},
          {"H", g.pair.second.to_string()},
          {"diff", g.pair.diff},
          {"choices", g.choices},
          {"differing_edges", differing_edges(g.pair.first, g.pair.second, g.vertices)}};
}

}  // namespace qbound
