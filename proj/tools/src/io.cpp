#include "coherence_cli/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "coherence/error.hpp"

namespace coherence::cli {

namespace {

Error input_error(const std::string& what) { return Error(ErrorCode::BadParams, what); }

double get_number(const Json& j, const char* key, double fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw input_error(std::string("\"") + key + "\" must be a number");
  return j.at(key).get<double>();
}

std::size_t get_count(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<long long>() < 0) {
    throw input_error(std::string("state params need a non-negative integer \"") + key + "\"");
  }
  return j.at(key).get<std::size_t>();
}

Complex parse_complex(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw input_error("matrix entries must be numbers or [re, im] pairs");
}

void require_match(const SystemPtr& given, const SystemPtr& built) {
  if (given && given->dim() != built->dim()) {
    throw Error(ErrorCode::DimensionMismatch, "state kind does not fit the given system");
  }
}

SystemPtr require_system(const SystemPtr& system, const std::string& kind) {
  if (!system) throw input_error("state kind \"" + kind + "\" needs a \"system\"");
  return system;
}

}  // namespace

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return std::strtod(format12(x).c_str(), nullptr);
}

std::string format12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open input file " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw input_error("malformed JSON in " + path + ": " + e.what());
  }
}

SystemPtr parse_system(const Json& j) {
  if (!j.is_object() || !j.contains("local_spectra") || !j.at("local_spectra").is_array()) {
    throw input_error("\"system\" needs a \"local_spectra\" array");
  }
  std::vector<std::vector<double>> spectra;
  for (const auto& s : j.at("local_spectra")) {
    if (!s.is_array()) throw input_error("each local spectrum must be an array");
    std::vector<double> levels;
    for (const auto& e : s) {
      if (!e.is_number()) throw input_error("local energies must be numbers");
      levels.push_back(e.get<double>());
    }
    spectra.push_back(std::move(levels));
  }
  std::optional<double> tol;
  if (j.contains("block_tolerance") && !j.at("block_tolerance").is_null()) {
    tol = get_number(j, "block_tolerance", 0.0);
  }
  return make_system(std::move(spectra), tol);
}

ComplexMatrix parse_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) throw input_error("matrix must be a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) throw input_error("matrix must be square");
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = parse_complex(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

QuantumState parse_state(const Json& spec, const SystemPtr& system, double beta) {
  if (!spec.is_object() || !spec.contains("kind") || !spec.at("kind").is_string()) {
    throw input_error("state needs a \"kind\"");
  }
  const std::string kind = spec.at("kind").get<std::string>();
  const Json params = spec.value("params", Json::object());
  const double omega = get_number(params, "omega", 1.0);

  auto checked = [&](QuantumState s) {
    require_match(system, s.system_ptr());
    return s;
  };

  if (kind == "ghz") return checked(states::ghz(get_count(params, "n"), omega));
  if (kind == "dicke") return checked(states::dicke(get_count(params, "n"), get_count(params, "k"), omega));
  if (kind == "two_qubit_psi") {
    return checked(states::two_qubit_psi(get_number(params, "p0", 0.0), get_number(params, "p1", 0.0),
                                         get_number(params, "p2", 0.0), omega));
  }
  if (kind == "supplemental_rho") return checked(states::supplemental_rho(omega));
  if (kind == "supplemental_sigma") return checked(states::supplemental_sigma(omega));
  if (kind == "coherent_gibbs") {
    return states::coherent_gibbs(require_system(system, kind), get_number(params, "beta", beta));
  }
  if (kind == "dense") {
    if (!spec.contains("matrix")) throw input_error("dense state needs a \"matrix\"");
    return states::dense(require_system(system, kind), parse_matrix(spec.at("matrix")));
  }
  if (kind == "pure") {
    if (!spec.contains("vector") || !spec.at("vector").is_array()) throw input_error("pure state needs a \"vector\"");
    const auto& v = spec.at("vector");
    ComplexVector psi(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) psi(static_cast<Eigen::Index>(i)) = parse_complex(v[i]);
    return QuantumState::pure(require_system(system, kind), psi);
  }
  if (kind == "uniform_superposition") {
    if (!params.contains("indices") || !params.at("indices").is_array()) {
      throw input_error("uniform_superposition needs \"indices\"");
    }
    std::vector<std::size_t> idx;
    for (const auto& i : params.at("indices")) {
      if (!i.is_number_integer() || i.get<long long>() < 0) throw input_error("indices must be non-negative integers");
      idx.push_back(i.get<std::size_t>());
    }
    return states::uniform_superposition(require_system(system, kind), idx);
  }
  if (kind == "tensor_power") {
    if (!params.contains("base")) throw input_error("tensor_power needs a \"base\" state");
    return states::tensor_power(parse_state(params.at("base"), system, beta), get_count(params, "n"));
  }
  throw input_error("unknown state kind \"" + kind + "\"");
}

Json export_state(const QuantumState& state, double beta) {
  Json doc;
  doc["system"]["local_spectra"] = state.system().local_spectra();
  doc["system"]["block_tolerance"] = state.system().block_tolerance();
  doc["beta"] = beta;
  doc["state"]["kind"] = "dense";
  doc["state"]["matrix"] = matrix_to_json(state.matrix());
  return doc;
}

}  // namespace coherence::cli
