#ifndef AWQ_CORE_HPP
#define AWQ_CORE_HPP

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace awq {

using cplx = std::complex<double>;

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatC = Mat<cplx>;
using VecC = Vec<cplx>;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConventionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateFitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedRegime : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Deformation parameter 0 < q < 1 with cached square roots.
struct QParams {
  double q;
  double sqrt_q;
  double inv_sqrt_q;

  explicit QParams(double q_) : q(q_), sqrt_q(std::sqrt(q_)), inv_sqrt_q(1.0 / std::sqrt(q_)) {
    if (!(q_ > 0.0 && q_ < 1.0)) throw DomainError("q must lie in (0,1), got " + std::to_string(q_));
  }

  double pow(double x) const { return std::pow(q, x); }
  // q^{1/2} - q^{-1/2}
  double s() const { return sqrt_q - inv_sqrt_q; }
  // q^{1/2} + q^{-1/2}
  double P() const { return sqrt_q + inv_sqrt_q; }
  double beta() const { return q + 1.0 / q; }
};

template <class A, class B>
auto kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return Eigen::kroneckerProduct(a.derived(), b.derived()).eval();
}

template <class Scalar>
Mat<Scalar> identity(Eigen::Index n) {
  return Mat<Scalar>::Identity(n, n);
}

// diag(q^{power * h_k})
template <class Scalar>
Mat<Scalar> qdiag(const Eigen::VectorXd& h, const QParams& q, double power) {
  Vec<Scalar> d(h.size());
  for (Eigen::Index k = 0; k < h.size(); ++k) d(k) = Scalar(q.pow(power * h(k)));
  return d.asDiagonal();
}

// [X,Y]_q = q^{1/2} XY - q^{-1/2} YX
template <class DX, class DY>
auto qcomm(const Eigen::MatrixBase<DX>& X, const Eigen::MatrixBase<DY>& Y, const QParams& q) {
  using Scalar = typename DX::Scalar;
  return (Scalar(q.sqrt_q) * (X * Y) - Scalar(q.inv_sqrt_q) * (Y * X)).eval();
}

template <class DX, class DY>
auto comm(const Eigen::MatrixBase<DX>& X, const Eigen::MatrixBase<DY>& Y) {
  return (X * Y - Y * X).eval();
}

inline double safe_scale(double s) { return std::max(s, std::numeric_limits<double>::min()); }

template <class DA, class DB>
double rel_diff(const Eigen::MatrixBase<DA>& lhs, const Eigen::MatrixBase<DB>& rhs) {
  return (lhs - rhs).norm() / safe_scale(std::max(lhs.norm(), rhs.norm()));
}

// relative commutator norm ||XY - YX|| / (||X|| ||Y||)
template <class DX, class DY>
double rel_comm(const Eigen::MatrixBase<DX>& X, const Eigen::MatrixBase<DY>& Y) {
  return comm(X, Y).norm() / safe_scale(X.norm() * Y.norm());
}

}  // namespace awq

#endif  // AWQ_CORE_HPP
