#ifndef AWQ_LATTICE_HPP
#define AWQ_LATTICE_HPP

#include "awq/awalgebra.hpp"

#include <array>
#include <string>

namespace awq {

template <class Scalar>
struct RMatrix {
  Scalar z;
  Eigen::Matrix<Scalar, 4, 4> entries;
  QParams q;
};

template <class Scalar>
using Blocks2 = std::array<std::array<Mat<Scalar>, 2>, 2>;

template <class Scalar>
struct LOperator {
  Scalar z;
  Blocks2<Scalar> blocks;

  // aux (x) quantum, aux index slow
  Mat<Scalar> assembled() const;
};

// Candidate forms of the boundary matrix.
//   Printed          as printed
//   K21Rescaled      K_21 (operator and scalar part) times (q^{1/2}-q^{-1/2})^{-2}
//   K21RhoMirrored   K^c_21 z-part multiplied by rho, mirroring K^c_12
//   K21RescaledSwap  K21Rescaled with eta and eta* exchanged in K^c_11, K^c_22
enum class KVariant { Printed, K21Rescaled, K21RhoMirrored, K21RescaledSwap };

// Dual reflection equation forms.
//   Printed     K*(z) = K^t(1/z, rho*) with transpose in the auxiliary space, R(q^{-1}/(z1 z2))
//   Unshifted   K*(z) = full transpose of K(1/z, rho*), R(1/(z1 z2))
enum class DualForm { Printed, Unshifted };

std::string to_string(KVariant v);
std::string to_string(DualForm f);

template <class Scalar>
struct KMatrixOp {
  Scalar z;
  Blocks2<Scalar> blocks;
  Eigen::Matrix<Scalar, 2, 2> scalar_part;
  Scalar rho_used, rho_star_used;
  Scalar branch;  // sqrt(rho)/sqrt(rho*) as used
  KVariant variant;

  Mat<Scalar> entry(int i, int j) const;
  // aux (x) operator space, aux index slow
  Mat<Scalar> assembled() const;
};

template <class Scalar>
RMatrix<Scalar> r_matrix(Scalar z, const QParams& q);

template <class Scalar>
double ybe_residual(Scalar z1, Scalar z2, const QParams& q, double perturb = 0.0);

template <class Scalar>
LOperator<Scalar> l_operator(Scalar z, const SpinRep<Scalar>& rep);

template <class Scalar>
double rll_residual(Scalar z1, Scalar z2, const SpinRep<Scalar>& rep);

// K(z, rho); `which_rho` false gives K(z, rho*), the second solution.
template <class Scalar>
KMatrixOp<Scalar> build_k_matrix(Scalar z, const TridiagonalPair<Scalar>& pair, const AWStructure<Scalar>& s,
                                 KVariant variant = KVariant::Printed, int branch_sign = 1,
                                 bool rho_solution = true);

// R12 K1 R12' K2 - K2 R12' K1 R12 on aux1 (x) aux2 (x) operator space.
template <class Scalar>
double reflection_residual_of(const Blocks2<Scalar>& K1, const Blocks2<Scalar>& K2, Scalar r_first,
                              Scalar r_middle, const QParams& q, std::optional<int> interior);

template <class Scalar>
double reflection_residual(Scalar z1, Scalar z2, const TridiagonalPair<Scalar>& pair, const AWStructure<Scalar>& s,
                           KVariant variant = KVariant::Printed, int branch_sign = 1);

template <class Scalar>
double dual_reflection_residual(Scalar z1, Scalar z2, const TridiagonalPair<Scalar>& pair,
                                const AWStructure<Scalar>& s, KVariant variant = KVariant::Printed,
                                DualForm form = DualForm::Printed);

// A* -> sqrt(rho/rho*) A* with constants transformed accordingly.
template <class Scalar>
std::pair<TridiagonalPair<Scalar>, AWStructure<Scalar>> equalize_rho(const TridiagonalPair<Scalar>& pair,
                                                                    const AWStructure<Scalar>& s);

}  // namespace awq

#endif  // AWQ_LATTICE_HPP
