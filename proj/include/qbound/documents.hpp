#pragma once

#include <filesystem>

#include <json.hpp>

#include "qbound/adversary_schemes.hpp"
#include "qbound/distance_schemes.hpp"
#include "qbound/families.hpp"
#include "qbound/function_table.hpp"
#include "qbound/matrix.hpp"
#include "qbound/simulator.hpp"

// JSON document formats. Inputs inside documents are digit strings that must
// belong to the function table's domain. Exact numbers are accepted as JSON
// integers, exact decimals, or "p/q" strings.

namespace qbound {

using Json = nlohmann::json;

/// Throws ParseError on unreadable or malformed JSON.
Json read_json_file(const std::filesystem::path& path);

/// {alphabet_size, n, entries: [{input, output}]}
FunctionTable load_function(const Json& doc);
/// Canonical form: entries sorted by input.
Json to_json(const FunctionTable& f);

/// {pairs: [{x, y}]}
Relation load_relation(const FunctionTable& f, const Json& doc);

/// {pairs: [{x, y, w}], triples: [{x, y, i, wprime}]}; unlisted entries are zero.
WeightScheme load_weights(const FunctionTable& f, const Json& doc);
Json to_json(const FunctionTable& f, const WeightScheme& s);

/// {q: [{x, y, value}], p: [{x, value}], pprime: [{x, i, y, value}]}
ExactProbabilityScheme load_probability_scheme(const FunctionTable& f, const Json& doc);
Json to_json(const FunctionTable& f, const ExactProbabilityScheme& ps);

/// {entries: [{x, y, value}]}; the transpose is filled in, and listing both
/// (x, y) and (y, x) with different values is an error.
DenseMatrix load_gamma(const FunctionTable& f, const Json& doc);

/// {entries: [{x, y, d}]}; every entry also gets its reverse.
DistanceScheme load_distances(const FunctionTable& f, const Json& doc);

/// {model, n, alphabet_size, work_dim, transforms, output_extractor:
/// {block_size, labels}}. A transform is a list of rows or a flat row-major
/// list; quantum entries are numbers or [re, im] pairs.
QueryAlgorithm load_algorithm(const Json& doc);
Json to_json(const QueryAlgorithm& alg);

Json to_json(const GraphPair& g);

}  // namespace qbound
