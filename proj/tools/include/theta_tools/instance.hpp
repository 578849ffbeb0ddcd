#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <theta/json_io.hpp>
#include <theta/lattice.hpp>
#include <theta/theta_eval.hpp>

namespace theta::tools {

struct Tolerances {
  double sum = kTolSum;
  double identity = kTolCocycle;
  double fd = kTolFiniteDifference;
};

/// A problem read from JSON. Only the fields a command needs are required;
/// `validate` checks whatever is present for mutual consistency.
struct ProblemInstance {
  int n = 0;
  int k = 0;
  std::optional<ComplexMatrix> omega;
  std::optional<SplitBasis> basis;
  std::optional<ModularElement> g;
  std::optional<Characteristic> characteristic;
  std::optional<ConeSpec> cone;
  std::optional<RealMatrix> q;  // for split-basis searches
  std::optional<ComplexVector> z;
  std::optional<int> bound;
  Tolerances tolerances;
  double radius_max = 64.0;
  std::uint64_t seed = kDefaultSampleSeed;

  /// The basis, defaulting to the reference basis for (n, k).
  SplitBasis basis_or_reference() const;
  /// The cone, defaulting to Gamma_+ of the basis.
  ConeSpec cone_or_default() const;
};

ProblemInstance parse_instance(const json_io::Json& j);
ProblemInstance load_instance(const std::string& path);

/// Throws Error(InvalidInput / SignatureMismatch / ...) on inconsistency.
void validate(const ProblemInstance& inst);

/// Parses "re,im;re,im;..." (an entry without a comma is real).
ComplexVector parse_z(const std::string& text);

}  // namespace theta::tools
