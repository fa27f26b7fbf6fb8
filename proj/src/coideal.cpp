#include "awq/awalgebra.hpp"
#include "awq/quantumrep.hpp"

namespace awq {

template <class Scalar>
double coproduct_coideal_residual(const ChevalleyRep<Scalar>& rep1, const ChevalleyRep<Scalar>& rep2,
                                  const CoidealParams<Scalar>& cp) {
  const ChevalleyRep<Scalar> t = tensor_coproduct(rep1, rep2);
  const TridiagonalPair<Scalar> lhs = build_coideal_ops(t, cp);
  const TridiagonalPair<Scalar> p1 = build_coideal_ops(rep1, cp);
  const TridiagonalPair<Scalar> p2 = build_coideal_ops(rep2, cp);
  const Mat<Scalar> I1 = identity<Scalar>(rep1.dim());
  const Mat<Scalar> rhsA = kron(I1, p2.A) + kron(Mat<Scalar>(p1.A - cp.k * I1), rep2.qH0(-1.0));
  const Mat<Scalar> rhsS = kron(I1, p2.A_star) + kron(Mat<Scalar>(p1.A_star - cp.k_star * I1), rep2.qH1(-1.0));
  return std::max(rel_diff(lhs.A, rhsA), rel_diff(lhs.A_star, rhsS));
}

template double coproduct_coideal_residual<cplx>(const ChevalleyRep<cplx>&, const ChevalleyRep<cplx>&,
                                                 const CoidealParams<cplx>&);

}  // namespace awq
