#pragma once

#include <json.hpp>

#include "theta/evaluator.hpp"
#include "theta/koszul.hpp"
#include "theta/lattice.hpp"
#include "theta/modular.hpp"
#include "theta/report.hpp"

namespace theta::json_io {

using Json = nlohmann::ordered_json;

// Complex numbers are {"re", "im"} records; matrices are row-major arrays of
// rows. Every parser throws Error(InvalidInput) on malformed input.

Json to_json(Complex z);
Json to_json(const ComplexVector& v);
Json to_json(const ComplexMatrix& m);
Json to_json(const RealVector& v);
Json to_json(const IntVector& v);
Json to_json(const IntMatrix& m);
Json to_json(const SplitBasis& b);
Json to_json(const ModularElement& g);
Json to_json(const ThetaValue& v);
Json to_json(const KoszulChain& c);
Json to_json(const Report& r);
Json to_json(const ModularTransformResult& r);

Complex complex_from(const Json& j);
ComplexVector complex_vector_from(const Json& j);
ComplexMatrix complex_matrix_from(const Json& j);
RealVector real_vector_from(const Json& j);
IntVector int_vector_from(const Json& j);
IntMatrix int_matrix_from(const Json& j);
RealMatrix real_matrix_from(const Json& j);
SplitBasis split_basis_from(const Json& j);
ModularElement modular_element_from(const Json& j);
KoszulChain koszul_chain_from(const Json& j, int dim);

/// Deterministic serialization (two-space indent, trailing newline).
std::string dump(const Json& j);

}  // namespace theta::json_io
