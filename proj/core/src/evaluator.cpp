#include "theta/evaluator.hpp"

#include <cmath>

#include "theta/errors.hpp"

namespace theta {

namespace {

class ConstantKernel final : public Kernel {
 public:
  ConstantKernel(int n, Complex c) : n_(n), c_(c) {}
  int dimension() const override { return n_; }
  ThetaValue evaluate(const ComplexVector&) const override { return {c_, 0.0, 0.0}; }

 private:
  int n_;
  Complex c_;
};

class FunctionKernel final : public Kernel {
 public:
  FunctionKernel(int n, std::function<ThetaValue(const ComplexVector&)> fn) : n_(n), fn_(std::move(fn)) {}
  int dimension() const override { return n_; }
  ThetaValue evaluate(const ComplexVector& w) const override { return fn_(w); }

 private:
  int n_;
  std::function<ThetaValue(const ComplexVector&)> fn_;
};

ComplexMatrix symmetric_part(const ComplexMatrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

Complex bilinear(const ComplexVector& x, const ComplexVector& y) { return x.cwiseProduct(y).sum(); }

Evaluator::Evaluator(std::shared_ptr<const Kernel> kernel) : kernel_(std::move(kernel)) {
  if (!kernel_) throw Error(ErrorCode::InvalidInput, "evaluator needs a kernel");
  const int n = kernel_->dimension();
  quad_ = ComplexMatrix::Zero(n, n);
  lin_ = ComplexVector::Zero(n);
  arg_map_ = ComplexMatrix::Identity(n, n);
  arg_shift_ = ComplexVector::Zero(n);
}

Evaluator Evaluator::constant(int n, Complex c) { return Evaluator(std::make_shared<ConstantKernel>(n, c)); }

Evaluator Evaluator::from_function(int n, std::function<ThetaValue(const ComplexVector&)> fn) {
  return Evaluator(std::make_shared<FunctionKernel>(n, std::move(fn)));
}

ThetaValue Evaluator::operator()(const ComplexVector& z) const {
  if (z.size() != n()) throw Error(ErrorCode::ShapeMismatch, "argument has wrong dimension");
  const ComplexVector w = arg_map_ * z + arg_shift_;
  const ThetaValue inner = kernel_->evaluate(w);
  const Complex exponent =
      kPi * kI * bilinear(z, quad_ * z) + 2.0 * kPi * kI * bilinear(lin_, z) + log_const_;
  const Complex pref = scale_ * std::exp(exponent);
  return {pref * inner.value, std::abs(pref) * inner.tail, inner.radius_used};
}

Evaluator Evaluator::act(const IntVector& m, const IntVector& nvec, const ComplexMatrix& omega,
                         const IntVector& delta) const {
  const int dim = n();
  if (m.size() != dim || nvec.size() != dim || omega.rows() != dim) {
    throw Error(ErrorCode::ShapeMismatch, "lattice action arguments have wrong dimension");
  }
  ComplexVector dm = m.cast<double>().cast<Complex>();
  if (delta.size() != 0) {
    if (delta.size() != dim) throw Error(ErrorCode::ShapeMismatch, "polarization type has wrong length");
    for (int i = 0; i < dim; ++i) dm(i) *= static_cast<double>(delta(i));
  }
  const ComplexVector nc = nvec.cast<double>().cast<Complex>();
  const ComplexVector t = dm + omega * nc;

  Evaluator out = *this;
  out.lin_ = lin_ + quad_ * t + nc;
  out.log_const_ = log_const_ + kPi * kI * bilinear(t, quad_ * t) + 2.0 * kPi * kI * bilinear(lin_, t) +
                   kPi * kI * bilinear(nc, omega * nc);
  out.arg_shift_ = arg_shift_ + arg_map_ * t;
  return out;
}

Evaluator Evaluator::act(const IntVector& lambda, const ComplexMatrix& omega, const IntVector& delta) const {
  const int dim = n();
  if (lambda.size() != 2 * dim) throw Error(ErrorCode::ShapeMismatch, "lattice vector must have length 2n");
  return act(lambda.tail(dim), lambda.head(dim), omega, delta);
}

Evaluator Evaluator::pullback(const ComplexMatrix& linear, const ComplexMatrix& quadratic, Complex factor) const {
  if (linear.rows() != n() || quadratic.rows() != linear.cols() || quadratic.cols() != linear.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "pullback maps have wrong shape");
  }
  Evaluator out = *this;
  out.quad_ = symmetric_part(quadratic + linear.transpose() * quad_ * linear);
  out.lin_ = linear.transpose() * lin_;
  out.arg_map_ = arg_map_ * linear;
  out.scale_ = scale_ * factor;
  return out;
}

Evaluator Evaluator::scaled(Complex factor) const {
  Evaluator out = *this;
  out.scale_ *= factor;
  return out;
}

}  // namespace theta
