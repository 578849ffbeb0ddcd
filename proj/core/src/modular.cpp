#include "theta/modular.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>

#include "theta/errors.hpp"
#include "theta/summation.hpp"
#include "theta/theta_eval.hpp"

namespace theta {

namespace {

ComplexMatrix as_complex(const IntMatrix& m) { return m.cast<double>().cast<Complex>(); }

bool is_identity(const ModularElement& g) { return g == ModularElement::identity(g.n()); }

void check_shapes(const ModularElement& g, const ComplexMatrix& omega) {
  const auto n = omega.rows();
  if (omega.cols() != n || g.A.rows() != n || g.A.cols() != n || g.B.rows() != n || g.B.cols() != n ||
      g.C.rows() != n || g.C.cols() != n || g.D.rows() != n || g.D.cols() != n) {
    throw Error(ErrorCode::ShapeMismatch, "modular element and period matrix differ in size");
  }
}

}  // namespace

ComplexMatrix omega_transform(const ModularElement& g, const ComplexMatrix& omega) {
  check_shapes(g, omega);
  const ComplexMatrix denom = -as_complex(g.C).transpose() * omega + as_complex(g.A).transpose();
  ComplexMatrix inv;
  try {
    inv = sym_inverse(denom);
  } catch (const Error&) {
    throw Error(ErrorCode::SingularDenominator, "-tC Omega + tA is singular");
  }
  const ComplexMatrix out = (as_complex(g.D).transpose() * omega - as_complex(g.B).transpose()) * inv;
  return 0.5 * (out + out.transpose());
}

ComplexMatrix modular_jacobian(const ModularElement& g, const ComplexMatrix& omega_g) {
  check_shapes(g, omega_g);
  return as_complex(g.C) * omega_g + as_complex(g.D);
}

ModularTransformResult modular_transform(const ModularElement& g, const ComplexMatrix& omega) {
  if (!is_gamma12(g)) throw Error(ErrorCode::NotGamma12, "g is not in Gamma_{1,2}");
  ModularTransformResult out;
  out.omega_g = omega_transform(g, omega);
  out.jacobian_factor = principal_sqrt_det(modular_jacobian(g, out.omega_g));
  if (signature(out.omega_g.imag()) != signature(omega.imag())) {
    throw Error(ErrorCode::SignatureBroken, "Im Omega^g has a different signature");
  }
  if (is_identity(g)) {
    out.zeta = Complex{1.0, 0.0};
  }
  return out;
}

Evaluator modular_apply(const ModularElement& g, const Family& family, const ComplexMatrix& omega, Complex zeta) {
  const ComplexMatrix omega_g = omega_transform(g, omega);
  const ComplexMatrix jac = modular_jacobian(g, omega_g);
  const ComplexMatrix lin = jac.transpose();
  const ComplexMatrix quad = as_complex(g.C) * lin;
  return family(omega_g).pullback(lin, quad, zeta * principal_sqrt_det(jac));
}

Family modular_family(const ModularElement& g, const Family& family, Complex zeta) {
  return [g, family, zeta](const ComplexMatrix& omega) { return modular_apply(g, family, omega, zeta); };
}

Complex theta_g_term(const RealVector& K, const ComplexVector& Z, const ComplexMatrix& omega,
                     const ModularElement& g, Complex zeta) {
  const ComplexMatrix omega_g = omega_transform(g, omega);
  const ComplexMatrix jac = modular_jacobian(g, omega_g);
  const ComplexVector w = jac.transpose() * Z;
  const Complex pref = zeta * principal_sqrt_det(jac) *
                       std::exp(kPi * kI * bilinear(Z, as_complex(g.C) * w));
  return pref * theta_term(K, w, omega_g);
}

Family theta_g_term_family(const RealVector& K, const ModularElement& g, Complex zeta) {
  const int n = static_cast<int>(K.size());
  Family single = [K, n](const ComplexMatrix& omega) {
    return Evaluator::from_function(n, [K, omega](const ComplexVector& w) {
      return ThetaValue{theta_term(K, w, omega), 0.0, 0.0};
    });
  };
  return modular_family(g, single, zeta);
}

ZetaFit determine_zeta(const std::vector<Complex>& unscaled, const std::vector<Complex>& target) {
  if (unscaled.size() != target.size() || unscaled.empty()) {
    throw Error(ErrorCode::InvalidInput, "zeta fit needs matching, nonempty probe lists");
  }
  std::array<double, 8> res{};
  for (int r = 0; r < 8; ++r) {
    const Complex root = std::polar(1.0, r * kPi / 4.0);
    double worst = 0.0;
    for (std::size_t p = 0; p < target.size(); ++p) {
      worst = std::max(worst, std::abs(root * unscaled[p] - target[p]) / std::max(1.0, std::abs(target[p])));
    }
    res[r] = worst;
  }
  std::array<int, 8> idx{0, 1, 2, 3, 4, 5, 6, 7};
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return res[a] < res[b]; });
  ZetaFit fit{std::polar(1.0, idx[0] * kPi / 4.0), res[idx[0]], res[idx[1]]};
  if (fit.runner_up <= 2.0 * fit.residual) {
    throw Error(ErrorCode::AmbiguousZeta, "two 8th roots of unity fit the reference equally well");
  }
  return fit;
}

ZetaFit determine_zeta(const ModularElement& g, const Family& family, const ComplexMatrix& omega,
                       const Evaluator& reference, const std::vector<ComplexVector>& probes) {
  if (is_identity(g)) return {Complex{1.0, 0.0}, 0.0, std::numeric_limits<double>::infinity()};
  const Evaluator transformed = modular_apply(g, family, omega, Complex{1.0, 0.0});
  std::vector<Complex> a, b;
  for (const auto& z : probes) {
    a.push_back(transformed.value(z));
    b.push_back(reference.value(z));
  }
  return determine_zeta(a, b);
}

Complex contour_integrand(double s, Complex z, Complex tau, int kpole, int nshift) {
  const Complex y{kpole - 0.5, s};
  const Complex w = z + static_cast<double>(nshift);
  return std::exp(kPi * kI * tau * y * y + 2.0 * kPi * kI * w * y) / (std::exp(2.0 * kPi * kI * y) - 1.0);
}

Complex contour_f(Complex z, Complex tau, int kpole, int nshift, const ContourOptions& opts) {
  if (!(tau.imag() < 0.0)) throw Error(ErrorCode::NonconvergentContour, "the contour integral needs Im tau < 0");
  // |integrand| <= exp(-pi b s^2 + lin s + c0) with b = |Im tau|; the
  // denominator has modulus >= 1 on the line.
  const double b = -tau.imag();
  const double c = kpole - 0.5;
  const Complex w = z + static_cast<double>(nshift);
  const double lin = -2.0 * kPi * tau.real() * c - 2.0 * kPi * w.real();
  const double c0 = kPi * b * c * c - 2.0 * kPi * w.imag() * c;
  const double centre = lin / (2.0 * kPi * b);
  const double log_peak = c0 + lin * lin / (4.0 * kPi * b);
  const double half_width =
      std::sqrt((std::log(1.0 / opts.tol) + std::max(0.0, log_peak)) / (kPi * b)) + 2.0;
  const double lo = centre - half_width;
  const double hi = centre + half_width;

  // The L1 norm of the integrand limits the attainable accuracy (the value
  // can be far smaller than the peak), so the stopping rule never asks for
  // less than a few ulps of it.
  double l1 = 0.0;
  auto integrate = [&](int panels) {
    const double h = (hi - lo) / panels;
    CompensatedSum acc;
    l1 = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double a = lo + p * h;
      double panel_l1 = 0.0;
      acc.add(boost::math::quadrature::gauss<double, 20>::integrate(
          [&](double s) { return contour_integrand(s, z, tau, kpole, nshift); }, a, a + h, &panel_l1));
      l1 += panel_l1;
    }
    return -kI * acc.value();  // dy = i ds, traversed from s = +inf down to -inf
  };

  int panels = std::max(1, opts.initial_panels);
  Complex prev = integrate(panels);
  while (panels < opts.max_panels) {
    panels *= 2;
    const Complex cur = integrate(panels);
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * l1;
    if (std::abs(cur - prev) < std::max(opts.tol / 4.0, floor)) return cur;
    prev = cur;
  }
  throw Error(ErrorCode::NonconvergentContour, "contour quadrature did not settle");
}

Report verify_case3_1d(const std::vector<Complex>& probes, Complex tau, int kpole, int nshift, double tol,
                       ZetaFit* fit_out) {
  Report report{"modular-case3-1d", {}, 0.0};
  const Complex inv_sqrt_tau = 1.0 / principal_sqrt(tau);
  std::vector<Complex> unscaled, target;
  for (const Complex z : probes) {
    const Complex f0 = contour_f(z, tau, kpole, nshift);
    const Complex f1 = contour_f(z + 1.0, tau, kpole, nshift);
    const Complex ft = contour_f(z + tau, tau, kpole, nshift);
    const Complex w = z + static_cast<double>(nshift);
    unscaled.push_back(inv_sqrt_tau * std::exp(-kPi * kI * w * w / tau));
    target.push_back(f1 - f0);

    const Complex lhs18 = std::exp(2.0 * kPi * kI * z + kPi * kI * tau) * ft - f0;
    const Complex rhs18 = -std::exp(kPi * kI * tau * static_cast<double>(kpole * kpole) +
                                    2.0 * kPi * kI * static_cast<double>(kpole) * z);
    report.add("tau_action z=" + std::to_string(z.real()) + "," + std::to_string(z.imag()),
               std::abs(lhs18 - rhs18), tol);
  }
  const ZetaFit fit = determine_zeta(unscaled, target);
  double spread = 0.0;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    report.add("one_action z=" + std::to_string(probes[p].real()) + "," + std::to_string(probes[p].imag()),
               std::abs(fit.zeta * unscaled[p] - target[p]), tol);
    spread = std::max(spread, std::abs(target[p] / unscaled[p] - fit.zeta));
  }
  report.add("zeta_constant", spread, tol);
  report.add("zeta_eighth_root", std::abs(std::pow(fit.zeta, 8) - 1.0), tol);
  if (fit_out != nullptr) *fit_out = fit;
  return report;
}

}  // namespace theta
