#include "theta/json_io.hpp"

#include <cmath>

#include "theta/errors.hpp"

namespace theta::json_io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, "malformed JSON: " + what); }

double number(const Json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

std::int64_t integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

const Json& rows_of(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) bad(std::string(what) + " must be a nonempty array of rows");
  for (const auto& row : j)
    if (!row.is_array() || row.size() != j.front().size()) bad(std::string(what) + " rows must have equal length");
  return j;
}

}  // namespace

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const ComplexMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const RealVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const SplitBasis& b) {
  return Json{{"n", b.n()}, {"k", b.k}, {"N", to_json(b.N)}, {"M", to_json(b.M)}};
}

Json to_json(const ModularElement& g) {
  return Json{{"A", to_json(g.A)}, {"B", to_json(g.B)}, {"C", to_json(g.C)}, {"D", to_json(g.D)}};
}

Json to_json(const ThetaValue& v) {
  return Json{{"value", to_json(v.value)}, {"tail", v.tail}, {"radius_used", v.radius_used}};
}

Json to_json(const KoszulChain& c) {
  Json comps = Json::array();
  for (const auto& [subset, elem] : c.components()) {
    Json sub = Json::array();
    for (int s : subset) sub.push_back(s + 1);
    Json terms = Json::array();
    for (const auto& [e, coef] : elem.terms()) {
      // Coefficients that fit in 64 bits are numbers, larger ones strings.
      Json cj;
      if (coef >= std::numeric_limits<std::int64_t>::min() && coef <= std::numeric_limits<std::int64_t>::max()) {
        cj = static_cast<std::int64_t>(coef);
      } else {
        cj = coef.str();
      }
      terms.push_back(Json{{"exp", e}, {"coef", cj}});
    }
    comps.push_back(Json{{"subset", sub}, {"terms", terms}});
  }
  return Json{{"degree", c.degree()}, {"components", comps}};
}

Json to_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json cj{{"name", c.name}};
    if (c.exact) {
      cj["exact"] = true;
    } else {
      cj["residual"] = c.residual;
      cj["tolerance"] = c.tolerance;
    }
    cj["pass"] = c.pass;
    checks.push_back(std::move(cj));
  }
  return Json{{"suite", r.suite}, {"pass", r.pass()}, {"max_residual", r.max_residual()}, {"checks", checks}};
}

Json to_json(const ModularTransformResult& r) {
  Json out{{"omega_g", to_json(r.omega_g)}, {"sqrt_det", to_json(r.jacobian_factor)}};
  out["zeta"] = r.zeta ? to_json(*r.zeta) : Json(nullptr);
  return out;
}

Complex complex_from(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_object() && j.contains("re") && j.contains("im")) {
    const Complex z{number(j["re"], "re"), number(j["im"], "im")};
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) bad("non-finite complex entry");
    return z;
  }
  if (j.is_array() && j.size() == 2) return {number(j[0], "re"), number(j[1], "im")};
  bad("complex must be {\"re\":..,\"im\":..}");
}

ComplexVector complex_vector_from(const Json& j) {
  if (!j.is_array()) bad("complex vector must be an array");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from(j[i]);
  return v;
}

ComplexMatrix complex_matrix_from(const Json& j) {
  rows_of(j, "complex matrix");
  ComplexMatrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(j.front().size()));
  for (std::size_t r = 0; r < j.size(); ++r)
    for (std::size_t c = 0; c < j[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from(j[r][c]);
  return m;
}

RealVector real_vector_from(const Json& j) {
  if (!j.is_array()) bad("real vector must be an array");
  RealVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i], "vector entry");
  return v;
}

IntVector int_vector_from(const Json& j) {
  if (!j.is_array()) bad("integer vector must be an array");
  IntVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = integer(j[i], "vector entry");
  return v;
}

IntMatrix int_matrix_from(const Json& j) {
  rows_of(j, "integer matrix");
  IntMatrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(j.front().size()));
  for (std::size_t r = 0; r < j.size(); ++r)
    for (std::size_t c = 0; c < j[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = integer(j[r][c], "matrix entry");
  return m;
}

RealMatrix real_matrix_from(const Json& j) {
  rows_of(j, "real matrix");
  RealMatrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(j.front().size()));
  for (std::size_t r = 0; r < j.size(); ++r)
    for (std::size_t c = 0; c < j[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = number(j[r][c], "matrix entry");
  return m;
}

SplitBasis split_basis_from(const Json& j) {
  if (!j.is_object() || !j.contains("N") || !j.contains("M") || !j.contains("k")) bad("basis needs N, M and k");
  SplitBasis b{int_matrix_from(j["N"]), int_matrix_from(j["M"]), static_cast<int>(integer(j["k"], "k"))};
  if (b.N.rows() != b.N.cols() || b.M.rows() != b.N.rows() || b.M.cols() != b.N.cols()) bad("N and M must be n x n");
  if (j.contains("n") && integer(j["n"], "n") != b.n()) bad("n disagrees with the basis size");
  return b;
}

ModularElement modular_element_from(const Json& j) {
  if (!j.is_object()) bad("g must be an object with blocks A, B, C, D");
  for (const char* key : {"A", "B", "C", "D"})
    if (!j.contains(key)) bad(std::string("g is missing block ") + key);
  return {int_matrix_from(j["A"]), int_matrix_from(j["B"]), int_matrix_from(j["C"]), int_matrix_from(j["D"])};
}

KoszulChain koszul_chain_from(const Json& j, int dim) {
  if (!j.is_object() || !j.contains("degree") || !j.contains("components")) bad("chain needs degree and components");
  KoszulChain out(dim, static_cast<int>(integer(j["degree"], "degree")));
  for (const auto& comp : j["components"]) {
    std::vector<int> subset;
    for (const auto& s : comp.at("subset")) subset.push_back(static_cast<int>(integer(s, "subset index")) - 1);
    GroupRingElement elem(dim);
    for (const auto& t : comp.at("terms")) {
      Exponent e;
      for (const auto& x : t.at("exp")) e.push_back(integer(x, "exponent"));
      const BigInt coef = t.at("coef").is_string() ? BigInt(t.at("coef").get<std::string>())
                                                    : BigInt(integer(t.at("coef"), "coef"));
      elem.add_term(e, coef);
    }
    out.add(subset, elem);
  }
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace theta::json_io
