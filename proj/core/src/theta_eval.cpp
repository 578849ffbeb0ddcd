#include "theta/theta_eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "theta/errors.hpp"
#include "theta/summation.hpp"

namespace theta {

Complex theta_term(const RealVector& K, const ComplexVector& Z, const ComplexMatrix& omega) {
  const auto n = K.size();
  if (Z.size() != n || omega.rows() != n || omega.cols() != n) {
    throw Error(ErrorCode::ShapeMismatch, "theta term arguments have inconsistent dimensions");
  }
  Complex quad{0.0, 0.0};
  Complex lin{0.0, 0.0};
  for (Eigen::Index i = 0; i < n; ++i) {
    Complex row{0.0, 0.0};
    for (Eigen::Index j = 0; j < n; ++j) row += omega(i, j) * K(j);
    quad += K(i) * row;
    lin += K(i) * Z(i);
  }
  return std::exp(kPi * kI * quad + 2.0 * kPi * kI * lin);
}

namespace {

struct ConeGeometry {
  int rank = 0;
  RealMatrix a;      // tG Y G
  RealMatrix a_inv;
  RealVector k_star;  // norm minimizer on the affine span
  double q0 = 0.0;
  double lambda_max = 0.0;
  double log_sqrt_det = 0.0;
};

ConeGeometry cone_geometry(const ConeSpec& cone, const RealMatrix& y) {
  ConeGeometry geo;
  geo.rank = cone.rank();
  const RealVector s = cone.shift_or_zero();
  if (geo.rank == 0) {
    geo.k_star = s;
    geo.q0 = s.dot(y * s);
    return geo;
  }
  const RealMatrix g = cone.generators.cast<double>();
  geo.a = g.transpose() * y * g;
  geo.a = 0.5 * (geo.a + geo.a.transpose());
  if (!is_positive_definite(geo.a)) {
    throw Error(ErrorCode::NonPositiveRestriction, "Im(Omega) is not positive definite on the cone span");
  }
  geo.a_inv = geo.a.inverse();
  const RealVector b = g.transpose() * y * s;
  const RealVector c_star = -geo.a_inv * b;
  geo.k_star = s + g * c_star;
  geo.q0 = s.dot(y * s) - b.dot(geo.a_inv * b);
  const RealVector ev = symmetric_eigenvalues(geo.a);
  geo.lambda_max = ev.maxCoeff();
  geo.log_sqrt_det = 0.5 * ev.array().log().sum();
  return geo;
}

RealMatrix checked_imag(const ComplexMatrix& omega, int n) {
  if (omega.rows() != n || omega.cols() != n) throw Error(ErrorCode::ShapeMismatch, "Omega must be n x n");
  const RealMatrix y = omega.imag();
  return 0.5 * (y + y.transpose());
}

}  // namespace

double tail_bound(const ConeSpec& cone, const ComplexMatrix& omega, const ComplexVector& Z, double radius) {
  const int n = cone.n();
  const RealMatrix y = checked_imag(omega, n);
  if (Z.size() != n) throw Error(ErrorCode::ShapeMismatch, "Z has wrong dimension");
  const ConeGeometry geo = cone_geometry(cone, y);
  const int r = geo.rank;
  if (r == 0) return 0.0;

  const RealMatrix g = cone.generators.cast<double>();
  const RealVector w = Z.imag();
  const RealVector gw = g.transpose() * w;
  const double alpha = std::sqrt(std::max(0.0, gw.dot(geo.a_inv * gw)));
  const double beta = geo.k_star.dot(w);
  const double rho = std::sqrt(std::max(0.0, radius * radius - geo.q0));
  const double delta = 0.5 * std::sqrt(r * geo.lambda_max);
  const double log_ball = 0.5 * r * std::log(kPi) - std::lgamma(0.5 * r + 1.0);

  auto log_count = [&](double t) { return log_ball + r * std::log(t + delta) - geo.log_sqrt_det; };
  auto log_h = [&](double u) { return -kPi * u * u + 2.0 * kPi * alpha * u - kPi * geo.q0 - 2.0 * kPi * beta; };

  double total = 0.0;
  double prev_log = 0.0;
  for (int j = 0; j < 100000; ++j) {
    const double lo = rho + j;
    const double hi = lo + 1.0;
    const double peak = std::clamp(alpha, lo, hi);
    const double lt = log_count(hi) + log_h(peak);
    const double term = std::exp(lt);
    total += term;
    if (j >= 1 && lo - 1.0 > alpha) {
      const double ratio = std::exp(lt - prev_log);
      if (ratio < 0.5) {
        total += term * ratio / (1.0 - ratio);
        return total;
      }
    }
    prev_log = lt;
  }
  return std::numeric_limits<double>::infinity();
}

ThetaValue cone_sum_at_radius(const ComplexVector& Z, const ComplexMatrix& omega, const ConeSpec& cone,
                              double radius) {
  if (cone.rank() == 0) {
    return {theta_term(cone.shift_or_zero(), Z, omega), 0.0, 0.0};
  }
  ConeSpec sized = cone;
  sized.radius = radius;
  const RealMatrix y = checked_imag(omega, cone.n());
  const std::vector<ConePoint> points = enumerate_cone(sized, y);
  const Complex value =
      ordered_sum(points.size(), [&](std::size_t i) { return theta_term(points[i].K, Z, omega); });
  return {value, tail_bound(cone, omega, Z, radius), radius};
}

double radius_for_tolerance(const ConeSpec& cone, const ComplexMatrix& omega, const ComplexVector& Z,
                            const SumOptions& opts) {
  if (!(opts.tol > 0.0)) throw Error(ErrorCode::InvalidInput, "tolerance must be positive");
  if (cone.rank() == 0) return 0.0;
  const ConeGeometry geo = cone_geometry(cone, checked_imag(omega, cone.n()));
  for (double radius = std::sqrt(std::max(0.0, geo.q0)) + 0.5; radius <= opts.radius_max; radius += 0.5) {
    if (tail_bound(cone, omega, Z, radius) <= opts.tol) return radius;
  }
  throw Error(ErrorCode::RadiusOverflow, "tail bound still above tolerance at radius " +
                                             std::to_string(opts.radius_max));
}

ThetaValue cone_sum(const ComplexVector& Z, const ComplexMatrix& omega, const ConeSpec& cone,
                    const SumOptions& opts) {
  return cone_sum_at_radius(Z, omega, cone, radius_for_tolerance(cone, omega, Z, opts));
}

RealVector Characteristic::a() const {
  RealVector v(n());
  for (int i = 0; i < n(); ++i) v(i) = static_cast<double>(numer(i)) / static_cast<double>(delta(i));
  return v;
}

std::int64_t Characteristic::det_delta() const { return delta.prod(); }

namespace {

void validate_delta(const IntVector& delta) {
  for (Eigen::Index i = 0; i < delta.size(); ++i) {
    if (delta(i) <= 0) throw Error(ErrorCode::BadCharacteristic, "polarization type must be positive");
    if (i > 0 && delta(i) % delta(i - 1) != 0) {
      throw Error(ErrorCode::BadCharacteristic, "polarization type must satisfy delta_1 | delta_2 | ...");
    }
  }
}

}  // namespace

Characteristic Characteristic::from_rational(const IntVector& delta,
                                             const std::vector<std::pair<std::int64_t, std::int64_t>>& a) {
  validate_delta(delta);
  if (static_cast<Eigen::Index>(a.size()) != delta.size()) {
    throw Error(ErrorCode::ShapeMismatch, "characteristic and polarization type differ in length");
  }
  Characteristic ch{delta, IntVector(delta.size())};
  for (Eigen::Index i = 0; i < delta.size(); ++i) {
    const auto [p, q] = a[i];
    if (q == 0 || (delta(i) * p) % q != 0) {
      throw Error(ErrorCode::BadCharacteristic, "Delta * a is not integral");
    }
    const std::int64_t scaled = delta(i) * p / q;
    ch.numer(i) = ((scaled % delta(i)) + delta(i)) % delta(i);
  }
  return ch;
}

std::vector<Characteristic> reduced_characteristics(const IntVector& delta) {
  validate_delta(delta);
  std::vector<Characteristic> out;
  IntVector numer = IntVector::Zero(delta.size());
  while (true) {
    out.push_back({delta, numer});
    Eigen::Index i = delta.size() - 1;
    while (i >= 0 && numer(i) == delta(i) - 1) numer(i--) = 0;
    if (i < 0) break;
    ++numer(i);
  }
  return out;
}

namespace {

ConeSpec shifted_by(const ConeSpec& cone, const RealVector& a) {
  ConeSpec out = cone;
  out.shift = cone.shift_or_zero() + a;
  return out;
}

class ConeSumKernel final : public Kernel {
 public:
  ConeSumKernel(ComplexMatrix omega, ConeSpec cone, SumOptions opts)
      : omega_(std::move(omega)), cone_(std::move(cone)), opts_(opts) {
    if (cone_.rank() > 0) cone_geometry(cone_, checked_imag(omega_, cone_.n()));
  }
  int dimension() const override { return cone_.n(); }
  ThetaValue evaluate(const ComplexVector& w) const override { return cone_sum(w, omega_, cone_, opts_); }

 private:
  ComplexMatrix omega_;
  ConeSpec cone_;
  SumOptions opts_;
};

}  // namespace

ThetaValue theta_char(const Characteristic& ch, const ComplexVector& Z, const ComplexMatrix& omega,
                      const ConeSpec& cone, const SumOptions& opts) {
  if (ch.n() != cone.n()) throw Error(ErrorCode::ShapeMismatch, "characteristic has wrong dimension");
  return cone_sum(Z, omega, shifted_by(cone, ch.a()), opts);
}

Evaluator cone_sum_evaluator(const ComplexMatrix& omega, const ConeSpec& cone, const SumOptions& opts) {
  return Evaluator(std::make_shared<ConeSumKernel>(omega, cone, opts));
}

Family cone_sum_family(const ConeSpec& cone, const SumOptions& opts) {
  return [cone, opts](const ComplexMatrix& omega) { return cone_sum_evaluator(omega, cone, opts); };
}

Evaluator theta_char_evaluator(const Characteristic& ch, const ComplexMatrix& omega, const ConeSpec& cone,
                               const SumOptions& opts) {
  if (ch.n() != cone.n()) throw Error(ErrorCode::ShapeMismatch, "characteristic has wrong dimension");
  return cone_sum_evaluator(omega, shifted_by(cone, ch.a()), opts);
}

Family theta_char_family(const Characteristic& ch, const ConeSpec& cone, const SumOptions& opts) {
  return [ch, cone, opts](const ComplexMatrix& omega) { return theta_char_evaluator(ch, omega, cone, opts); };
}

Evaluator lambda_action(const IntVector& m, const IntVector& nvec, const Evaluator& f, const ComplexMatrix& omega,
                        const IntVector& delta) {
  return f.act(m, nvec, omega, delta);
}

namespace {

class WedgeKernel final : public Kernel {
 public:
  WedgeKernel(SplitBasis basis, ComplexMatrix omega, int k, WedgeOptions opts)
      : basis_(std::move(basis)), omega_(std::move(omega)), k_(k), opts_(opts) {
    q_ = checked_imag(omega_, basis_.n());
    enumerate_wedge(basis_, k_, q_, 0);  // validates both bases
  }

  int dimension() const override { return basis_.n(); }

  ThetaValue evaluate(const ComplexVector& w) const override {
    int box = std::max(1, opts_.initial_box);
    Complex prev = sum(w, box);
    while (true) {
      box *= 2;
      if (box > opts_.max_box) {
        throw Error(ErrorCode::RadiusOverflow, "wedge sum did not settle within the coefficient box limit");
      }
      const Complex cur = sum(w, box);
      const double diff = std::abs(cur - prev);
      if (diff < opts_.tol) return {cur, diff, static_cast<double>(box)};
      prev = cur;
    }
  }

 private:
  const std::vector<SignedPoint>& points(int box) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(box);
    if (it == cache_.end()) it = cache_.emplace(box, enumerate_wedge(basis_, k_, q_, box)).first;
    return it->second;
  }

  Complex sum(const ComplexVector& w, int box) const {
    const auto& pts = points(box);
    return ordered_sum(pts.size(), [&](std::size_t i) {
      return static_cast<double>(pts[i].sign) * theta_term(pts[i].K.cast<double>(), w, omega_);
    });
  }

  SplitBasis basis_;
  ComplexMatrix omega_;
  RealMatrix q_;
  int k_;
  WedgeOptions opts_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::vector<SignedPoint>> cache_;
};

}  // namespace

Evaluator wedge_function(const SplitBasis& basis, const ComplexMatrix& omega, int k, const WedgeOptions& opts) {
  return Evaluator(std::make_shared<WedgeKernel>(basis, omega, k, opts));
}

Report verify_cocycle(const Evaluator& c, const IntMatrix& lattice_basis, int k, const ComplexMatrix& omega,
                      const std::vector<ComplexVector>& samples, double tol, const IntVector& delta) {
  const int n = c.n();
  if (lattice_basis.rows() != 2 * n || lattice_basis.cols() != 2 * n) {
    throw Error(ErrorCode::ShapeMismatch, "lattice basis must be 2n x 2n");
  }
  Report report{"cocycle", {}, 0.0};
  std::vector<Complex> base;
  base.reserve(samples.size());
  for (const auto& z : samples) base.push_back(c.value(z));

  auto residual_for = [&](const IntVector& lambda) {
    const Evaluator moved = c.act(lambda, omega, delta);
    double r = 0.0;
    for (std::size_t s = 0; s < samples.size(); ++s) r = std::max(r, std::abs(moved.value(samples[s]) - base[s]));
    return r;
  };
  for (int i = 0; i < n; ++i) {
    report.add("d_" + std::to_string(i + 1), residual_for(lattice_basis.col(n + i)), tol);
  }
  for (int j = k; j < n; ++j) {
    report.add("delta_" + std::to_string(j + 1), residual_for(lattice_basis.col(j)), tol);
  }
  return report;
}

}  // namespace theta
