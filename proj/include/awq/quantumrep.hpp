#ifndef AWQ_QUANTUMREP_HPP
#define AWQ_QUANTUMREP_HPP

#include "awq/core.hpp"

namespace awq {

template <class Scalar>
struct SpinRep {
  int dim;
  int j_twice;
  Mat<Scalar> Aplus, Aminus;
  Mat<Scalar> qN_pos, qN_neg;
  Eigen::VectorXd m;  // diagonal of N
  QParams q;

  Mat<Scalar> N() const { return m.cast<Scalar>().asDiagonal(); }
  Mat<Scalar> qN(double power) const { return qdiag<Scalar>(m, q, power); }
};

// Images of E_i^{+-} and of H_i (stored by their diagonals).
template <class Scalar>
struct ChevalleyRep {
  Mat<Scalar> E0p, E0m, E1p, E1m;
  Eigen::VectorXd H0, H1;
  int level;
  Scalar nu;
  QParams q;

  int dim() const { return static_cast<int>(H0.size()); }
  Mat<Scalar> qH0(double power = 1.0) const { return qdiag<Scalar>(H0, q, power); }
  Mat<Scalar> qH1(double power = 1.0) const { return qdiag<Scalar>(H1, q, power); }
};

template <class Scalar>
struct CoidealParams {
  Scalar u, u_star, v, v_star, k, k_star;
};

enum class CasimirForm { Central, Printed };
enum class SerreSign { Minus, Plus };

template <class Scalar>
SpinRep<Scalar> build_spin_rep(int j_twice, const QParams& q);

template <class Scalar>
double spin_rep_residual(const SpinRep<Scalar>& rep);

template <class Scalar>
Mat<Scalar> casimir_matrix(const SpinRep<Scalar>& rep, CasimirForm form = CasimirForm::Central);

template <class Scalar>
Scalar casimir_value(const SpinRep<Scalar>& rep, CasimirForm form = CasimirForm::Central);

double casimir_closed_form(int j_twice, const QParams& q);

template <class Scalar>
ChevalleyRep<Scalar> build_evaluation_rep(Scalar nu, const SpinRep<Scalar>& base);

template <class Scalar>
double chevalley_residual(const ChevalleyRep<Scalar>& rep);

template <class Scalar>
double qserre_residual(const ChevalleyRep<Scalar>& rep, SerreSign sign = SerreSign::Minus);

// rep1 (x) rep2 through E -> E (x) q^{-H/2} + q^{H/2} (x) E, H -> H (x) 1 + 1 (x) H.
template <class Scalar>
ChevalleyRep<Scalar> tensor_coproduct(const ChevalleyRep<Scalar>& rep1, const ChevalleyRep<Scalar>& rep2);

template <class Scalar>
double coproduct_coideal_residual(const ChevalleyRep<Scalar>& rep1, const ChevalleyRep<Scalar>& rep2,
                                  const CoidealParams<Scalar>& cp);

}  // namespace awq

#endif  // AWQ_QUANTUMREP_HPP
