#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "coherence/model.hpp"
#include "coherence/states.hpp"

namespace coherence::cli {

using Json = nlohmann::json;

/// A JSON number rounded to 12 significant digits; non-finite values become
/// the strings "inf", "-inf" or "nan".
Json number(double x);
/// "%.12g".
std::string format12(double x);

Json read_json_file(const std::string& path);

/// {"local_spectra": [[...], ...], "block_tolerance": optional}
SystemPtr parse_system(const Json& j);

/// State description {"kind": ..., "params": {...}, "matrix": ..., "vector": ...}.
/// `system` may be null for kinds that define their own system.
QuantumState parse_state(const Json& spec, const SystemPtr& system, double beta);

/// Complex matrix as rows of [re, im] pairs (plain reals accepted on input).
ComplexMatrix parse_matrix(const Json& j);
Json matrix_to_json(const ComplexMatrix& m);

/// A full input document for `state`, with every entry at full precision so
/// that re-importing reproduces the matrix bit for bit.
Json export_state(const QuantumState& state, double beta);

}  // namespace coherence::cli
