#pragma once

#include <optional>
#include <string>
#include <vector>

#include <theta/report.hpp>

#include "theta_tools/instance.hpp"

namespace theta::tools {

struct SuiteOptions {
  std::uint64_t seed = kDefaultSampleSeed;
  /// When present, instance-driven suites (cocycle, heat) run on it instead
  /// of their built-in canonical instances.
  std::optional<ProblemInstance> instance;
};

Report suite_cocycle(const SuiteOptions& opts = {});
Report suite_heat(const SuiteOptions& opts = {});
Report suite_modular_case1(const SuiteOptions& opts = {});
Report suite_modular_case2(const SuiteOptions& opts = {});
Report suite_modular_case3_1d(const SuiteOptions& opts = {});
Report suite_wedge(const SuiteOptions& opts = {});
Report suite_koszul(const SuiteOptions& opts = {});
Report suite_reduced(const SuiteOptions& opts = {});
Report suite_characteristics(const SuiteOptions& opts = {});

/// The quasi-shift draws of the modular suites on their own.
Report quasi_shift_report(int draws, std::uint64_t seed);

const std::vector<std::string>& suite_names();  // without "all"
/// Runs one suite by name ("all" runs every suite). Throws InvalidInput for
/// an unknown name. Timing is recorded in Report::seconds.
Report run_suite(const std::string& name, const SuiteOptions& opts = {});

}  // namespace theta::tools
