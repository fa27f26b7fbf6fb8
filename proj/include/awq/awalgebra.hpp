#ifndef AWQ_AWALGEBRA_HPP
#define AWQ_AWALGEBRA_HPP

#include "awq/qspecial.hpp"
#include "awq/quantumrep.hpp"

#include <optional>

namespace awq {

template <class Scalar>
struct AWStructure {
  Scalar beta_aw, gamma, gamma_star, rho, rho_star, omega, eta, eta_star;
};

template <class Scalar>
struct TridiagonalPair {
  Mat<Scalar> A, A_star;
  int bandwidth_A;
  int bandwidth_Astar;
  std::optional<int> exact_dim;
  QParams q;

  int dim() const { return static_cast<int>(A.rows()); }
};

struct ResidualPair {
  double r1, r2;
  double max() const { return std::max(r1, r2); }
};

template <class Scalar>
struct FitResult {
  AWStructure<Scalar> s;
  double residual;
  double omega_mismatch;
};

enum class Rescaling { Applied, Omitted };

template <class Scalar>
int bandwidth(const Mat<Scalar>& M);

// Interior margins for products of banded operators.
int aw_margin(int bw_A, int bw_Astar);
int tridiagonal_margin(int bw_A, int bw_Astar);
int reflection_margin(int bw_A, int bw_Astar);

template <class Scalar>
int interior_size(const TridiagonalPair<Scalar>& pair, int margin);

template <class Scalar>
TridiagonalPair<Scalar> build_coideal_ops(const ChevalleyRep<Scalar>& rep, const CoidealParams<Scalar>& cp,
                                          Rescaling rescale = Rescaling::Applied);

template <class Scalar>
AWStructure<Scalar> structure_constants_prop1(const CoidealParams<Scalar>& cp, Scalar l_v0, const QParams& q);

// Same constants with omega of opposite sign.
template <class Scalar>
AWStructure<Scalar> structure_constants_prop1_corrected(const CoidealParams<Scalar>& cp, Scalar l_v0,
                                                        const QParams& q);

template <class Scalar>
CoidealParams<Scalar> absorb_nu(const CoidealParams<Scalar>& cp, Scalar nu);

double l_v0_closed_form(int j_twice, const QParams& q);

template <class Scalar>
FitResult<Scalar> fit_structure_constants(const TridiagonalPair<Scalar>& pair);

template <class Scalar>
ResidualPair aw_residual(const TridiagonalPair<Scalar>& pair, const AWStructure<Scalar>& s);

template <class Scalar>
ResidualPair tridiagonal_residual(const TridiagonalPair<Scalar>& pair, const AWStructure<Scalar>& s);

template <class Scalar>
TridiagonalPair<Scalar> affine_transform(const TridiagonalPair<Scalar>& pair, Scalar t, Scalar t_star,
                                         Scalar c_prime, Scalar c_star);

template <class Scalar>
TridiagonalPair<Scalar> build_basic_representation(int N, const AWParams<Scalar>& p);

// Constants of the basic representation in terms of e_k(a,b,c,d).
template <class Scalar>
AWStructure<Scalar> basic_structure_constants(const AWParams<Scalar>& p);

}  // namespace awq

#endif  // AWQ_AWALGEBRA_HPP
