#include "theta_tools/instance.hpp"

#include <fstream>
#include <sstream>

#include <theta/errors.hpp>

namespace theta::tools {

using json_io::Json;

SplitBasis ProblemInstance::basis_or_reference() const { return basis ? *basis : SplitBasis::reference(n, k); }

ConeSpec ProblemInstance::cone_or_default() const { return cone ? *cone : positive_cone(basis_or_reference()); }

namespace {

ConeSpec cone_from(const Json& j, int n) {
  ConeSpec cone;
  const Json& gens = j.contains("generators") ? j["generators"] : Json::array();
  cone.generators = IntMatrix(n, static_cast<Eigen::Index>(gens.size()));
  for (std::size_t c = 0; c < gens.size(); ++c) {
    const IntVector v = json_io::int_vector_from(gens[c]);
    if (v.size() != n) throw Error(ErrorCode::ShapeMismatch, "cone generator has wrong length");
    cone.generators.col(static_cast<Eigen::Index>(c)) = v;
  }
  if (j.contains("shift")) {
    cone.shift = json_io::real_vector_from(j["shift"]);
    if (cone.shift.size() != n) throw Error(ErrorCode::ShapeMismatch, "cone shift has wrong length");
  }
  return cone;
}

}  // namespace

ProblemInstance parse_instance(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "instance must be a JSON object");
  ProblemInstance inst;
  if (j.contains("omega")) {
    inst.omega = json_io::complex_matrix_from(j["omega"]);
    inst.n = static_cast<int>(inst.omega->rows());
  }
  if (j.contains("Q")) {
    inst.q = json_io::real_matrix_from(j["Q"]);
    inst.n = static_cast<int>(inst.q->rows());
  }
  if (j.contains("n")) inst.n = j["n"].get<int>();
  if (j.contains("k")) {
    inst.k = j["k"].get<int>();
  } else if (inst.omega && is_complex_symmetric(*inst.omega)) {
    inst.k = signature(inst.omega->imag()).neg;
  }
  if (j.contains("basis")) inst.basis = json_io::split_basis_from(j["basis"]);
  if (j.contains("g")) inst.g = json_io::modular_element_from(j["g"]);
  if (j.contains("cone")) inst.cone = cone_from(j["cone"], inst.n);
  if (j.contains("Z")) inst.z = json_io::complex_vector_from(j["Z"]);
  if (j.contains("bound")) inst.bound = j["bound"].get<int>();
  if (j.contains("characteristic")) {
    const Json& c = j["characteristic"];
    const IntVector delta = json_io::int_vector_from(c.at("delta"));
    std::vector<std::pair<std::int64_t, std::int64_t>> a;
    for (const auto& entry : c.at("a")) {
      if (entry.is_array() && entry.size() == 2) {
        a.emplace_back(entry[0].get<std::int64_t>(), entry[1].get<std::int64_t>());
      } else if (entry.is_number_integer()) {
        a.emplace_back(entry.get<std::int64_t>(), 1);
      } else {
        throw Error(ErrorCode::InvalidInput, "characteristic entries are [numerator, denominator] pairs");
      }
    }
    inst.characteristic = Characteristic::from_rational(delta, a);
  }
  if (j.contains("tol")) inst.tolerances.sum = j["tol"].get<double>();
  if (j.contains("tolerances")) {
    const Json& t = j["tolerances"];
    if (t.contains("sum")) inst.tolerances.sum = t["sum"].get<double>();
    if (t.contains("identity")) inst.tolerances.identity = t["identity"].get<double>();
    if (t.contains("fd")) inst.tolerances.fd = t["fd"].get<double>();
  }
  if (j.contains("radius_max")) inst.radius_max = j["radius_max"].get<double>();
  if (j.contains("seed")) inst.seed = j["seed"].get<std::uint64_t>();
  return inst;
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open instance file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("instance is not valid JSON: ") + e.what());
  }
  try {
    return parse_instance(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("instance has a wrongly typed field: ") + e.what());
  }
}

void validate(const ProblemInstance& inst) {
  if (inst.n <= 0) throw Error(ErrorCode::InvalidInput, "instance needs n >= 1 (or an omega / Q matrix)");
  if (inst.k < 0 || inst.k > inst.n) throw Error(ErrorCode::InvalidInput, "k must lie in 0..n");
  if (inst.omega) {
    if (inst.omega->rows() != inst.n || inst.omega->cols() != inst.n) {
      throw Error(ErrorCode::ShapeMismatch, "omega must be n x n");
    }
    PeriodMatrix pm(*inst.omega);  // symmetry, finiteness, nondegeneracy
    if (pm.k() != inst.k) {
      throw Error(ErrorCode::SignatureMismatch, "signature of Im omega is not (k, n - k)");
    }
    if (inst.basis && !is_split_basis(*inst.basis, inst.omega->imag(), inst.k)) {
      throw Error(ErrorCode::InvalidInput, "basis is not split for Im omega");
    }
  }
  if (inst.basis && inst.basis->n() != inst.n) throw Error(ErrorCode::ShapeMismatch, "basis has wrong size");
  if (inst.g && inst.g->n() != inst.n) throw Error(ErrorCode::ShapeMismatch, "g has wrong size");
  if (inst.characteristic && inst.characteristic->n() != inst.n) {
    throw Error(ErrorCode::ShapeMismatch, "characteristic has wrong size");
  }
  if (inst.z && inst.z->size() != inst.n) throw Error(ErrorCode::ShapeMismatch, "Z has wrong size");
  if (!(inst.tolerances.sum > 0.0)) throw Error(ErrorCode::InvalidInput, "tolerance must be positive");
}

ComplexVector parse_z(const std::string& text) {
  std::vector<Complex> entries;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    const auto comma = item.find(',');
    try {
      if (comma == std::string::npos) {
        entries.emplace_back(std::stod(item), 0.0);
      } else {
        entries.emplace_back(std::stod(item.substr(0, comma)), std::stod(item.substr(comma + 1)));
      }
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidInput, "cannot parse Z entry '" + item + "'");
    }
  }
  ComplexVector z(static_cast<Eigen::Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) z(static_cast<Eigen::Index>(i)) = entries[i];
  return z;
}

}  // namespace theta::tools
