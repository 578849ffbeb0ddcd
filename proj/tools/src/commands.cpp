#include "theta_tools/commands.hpp"

#include <fstream>
#include <functional>
#include <ostream>

#include <theta/errors.hpp>
#include <theta/modular.hpp>

#include "theta_tools/suites.hpp"

namespace theta::tools {

using json_io::Json;

namespace {

ProblemInstance load(const CommandOptions& opts) {
  if (!opts.instance_path) throw Error(ErrorCode::InvalidInput, "this command needs --instance");
  ProblemInstance inst = load_instance(*opts.instance_path);
  if (opts.tol) inst.tolerances.sum = *opts.tol;
  if (opts.radius_max) inst.radius_max = *opts.radius_max;
  if (opts.bound) inst.bound = *opts.bound;
  if (opts.z) inst.z = parse_z(*opts.z);
  return inst;
}

void emit(const Json& j, const CommandOptions& opts, std::ostream& out) {
  const std::string text = json_io::dump(j);
  out << text;
  if (opts.json_out) {
    std::ofstream file(*opts.json_out);
    if (!file) throw Error(ErrorCode::InvalidInput, "cannot write " + *opts.json_out);
    file << text;
  }
}

// Maps library errors onto the exit-code contract.
int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::RadiusOverflow:
        return kExitRadiusOverflow;
      case ErrorCode::NotFound:
        return kExitNotFound;
      default:
        return kExitValidation;
    }
  } catch (const nlohmann::json::exception& e) {
    err << "error [InvalidInput]: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace

int cmd_eval(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const ProblemInstance inst = load(opts);
        validate(inst);
        if (!inst.omega) throw Error(ErrorCode::InvalidInput, "eval needs omega");
        const ComplexVector z = inst.z ? *inst.z : ComplexVector::Zero(inst.n);
        const SumOptions sum{inst.tolerances.sum, inst.radius_max};
        const ConeSpec cone = inst.cone_or_default();
        const ThetaValue v = inst.characteristic ? theta_char(*inst.characteristic, z, *inst.omega, cone, sum)
                                                 : cone_sum(z, *inst.omega, cone, sum);
        emit(json_io::to_json(v), opts, out);
        return static_cast<int>(kExitOk);
      },
      err);
}

int cmd_transform(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const ProblemInstance inst = load(opts);
        validate(inst);
        if (!inst.omega || !inst.g) throw Error(ErrorCode::InvalidInput, "transform needs omega and g");
        const ModularElement& g = *inst.g;
        const ComplexMatrix& omega = *inst.omega;
        ModularTransformResult result = modular_transform(g, omega);
        const int n = inst.n;

        Json residuals = Json::object();
        const ComplexMatrix a = g.A.cast<double>().cast<Complex>();
        const ComplexMatrix b = g.B.cast<double>().cast<Complex>();
        const ComplexMatrix jac = modular_jacobian(g, result.omega_g);
        residuals["round_trip"] = max_abs((a * result.omega_g + b) * sym_inverse(jac) - omega);
        residuals["symmetry"] = max_abs(result.omega_g - result.omega_g.transpose());

        const auto probes = sample_points(n, 5, inst.seed);
        const bool translation = g.A == IntMatrix::Identity(n, n) && g.D == IntMatrix::Identity(n, n) &&
                                 g.C == IntMatrix::Zero(n, n);
        const bool inversion_1d = n == 1 && g == ModularElement::inversion(1) && inst.k == 1;
        if (!result.zeta && translation) {
          // Reference identity: the cone sum is unchanged pointwise.
          const Family c = cone_sum_family(inst.cone_or_default());
          const ZetaFit fit = determine_zeta(g, c, omega, c(omega), probes);
          result.zeta = fit.zeta;
          residuals["zeta_fit"] = fit.residual;
        } else if (!result.zeta && inversion_1d) {
          ZetaFit fit;
          std::vector<Complex> zs;
          for (const auto& p : probes) zs.push_back(p(0));
          const Report r = verify_case3_1d(zs, omega(0, 0), 1, 0, inst.tolerances.identity, &fit);
          result.zeta = fit.zeta;
          residuals["zeta_fit"] = fit.residual;
          residuals["case3_max"] = r.max_residual();
        }
        Json j = json_io::to_json(result);
        j["residuals"] = residuals;
        emit(j, opts, out);
        return static_cast<int>(kExitOk);
      },
      err);
}

int cmd_split_basis(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const ProblemInstance inst = load(opts);
        RealMatrix q;
        if (inst.q) {
          q = *inst.q;
        } else if (inst.omega) {
          q = inst.omega->imag();
        } else {
          throw Error(ErrorCode::InvalidInput, "split-basis needs Q or omega");
        }
        const int bound = inst.bound ? *inst.bound : 3;
        if (bound < 0) throw Error(ErrorCode::InvalidInput, "bound must be nonnegative");
        const SplitBasis basis = find_split_basis(q, inst.k, bound);
        emit(json_io::to_json(basis), opts, out);
        return static_cast<int>(kExitOk);
      },
      err);
}

int cmd_verify(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        SuiteOptions suite_opts;
        if (opts.instance_path) {
          const ProblemInstance inst = load(opts);
          validate(inst);
          suite_opts.seed = inst.seed;
          suite_opts.instance = inst;
        }
        const Report report = run_suite(opts.suite, suite_opts);
        emit(json_io::to_json(report), opts, out);
        err << "suite " << report.suite << ": " << (report.pass() ? "pass" : "FAIL") << " in " << report.seconds
            << " s\n";
        return static_cast<int>(report.pass() ? kExitOk : kExitCheckFailed);
      },
      err);
}

}  // namespace theta::tools
