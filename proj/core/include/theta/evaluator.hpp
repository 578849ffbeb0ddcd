#pragma once

#include <functional>
#include <memory>

#include "theta/numeric.hpp"

namespace theta {

/// A complex value with an absolute bound on the omitted part of the sum
/// (or integral) that produced it.
struct ThetaValue {
  Complex value{0.0, 0.0};
  double tail = 0.0;
  double radius_used = 0.0;
};

/// The analytic core of an evaluator: a deterministic rule W -> ThetaValue.
class Kernel {
 public:
  virtual ~Kernel() = default;
  virtual int dimension() const = 0;
  virtual ThetaValue evaluate(const ComplexVector& w) const = 0;
};

/// A holomorphic function on C^n represented as
///
///   f(Z) = scale * exp(pi i tZ P Z + 2 pi i tl Z + c) * kernel(L Z + s).
///
/// The lattice action and modular pullbacks only update (scale, P, l, c, L, s),
/// so prefactors are carried exactly in structure and exponentiated once.
/// Immutable; copies share the kernel.
class Evaluator {
 public:
  explicit Evaluator(std::shared_ptr<const Kernel> kernel);

  static Evaluator constant(int n, Complex c);
  static Evaluator from_function(int n, std::function<ThetaValue(const ComplexVector&)> fn);

  int n() const noexcept { return static_cast<int>(quad_.rows()); }

  ThetaValue operator()(const ComplexVector& z) const;
  Complex value(const ComplexVector& z) const { return (*this)(z).value; }

  /// (M, N) . f (Z) = exp(2 pi i tN Z + pi i tN Omega N) f(Z + Delta M + Omega N).
  /// An empty `delta` means Delta = I.
  Evaluator act(const IntVector& m, const IntVector& nvec, const ComplexMatrix& omega,
                const IntVector& delta = {}) const;
  /// Same, for a 2n-column lambda = (N-part; M-part) in the reference basis.
  Evaluator act(const IntVector& lambda, const ComplexMatrix& omega, const IntVector& delta = {}) const;

  /// Z -> factor * exp(pi i tZ P Z) * f(L Z).
  Evaluator pullback(const ComplexMatrix& linear, const ComplexMatrix& quadratic, Complex factor) const;

  Evaluator scaled(Complex factor) const;

 private:
  std::shared_ptr<const Kernel> kernel_;
  Complex scale_{1.0, 0.0};
  Complex log_const_{0.0, 0.0};
  ComplexMatrix quad_;
  ComplexVector lin_;
  ComplexMatrix arg_map_;
  ComplexVector arg_shift_;
};

/// A function family parameterized by the period matrix.
using Family = std::function<Evaluator(const ComplexMatrix& omega)>;

/// Bilinear (unconjugated) pairing tx y.
Complex bilinear(const ComplexVector& x, const ComplexVector& y);

}  // namespace theta
