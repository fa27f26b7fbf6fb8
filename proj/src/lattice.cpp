#include "awq/lattice.hpp"

namespace awq {

namespace {

// Operator-valued 2x2 matrix on leg 1 or 2 of aux1 (x) aux2 (x) V.
template <class Scalar>
Mat<Scalar> on_leg(const Blocks2<Scalar>& K, int which) {
  const Eigen::Index n = K[0][0].rows();
  Mat<Scalar> M = Mat<Scalar>::Zero(4 * n, 4 * n);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        if (which == 1)
          M.block((2 * a + c) * n, (2 * b + c) * n, n, n) = K[a][b];
        else
          M.block((2 * c + a) * n, (2 * c + b) * n, n, n) = K[a][b];
      }
  return M;
}

template <class Scalar>
Mat<Scalar> r_on(Scalar z, const QParams& q, Eigen::Index n) {
  return kron(Mat<Scalar>(r_matrix(z, q).entries), identity<Scalar>(n));
}

template <class Scalar>
Mat<Scalar> interior_rows(const Mat<Scalar>& M, Eigen::Index n, Eigen::Index keep) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index blk = 0; blk < 4; ++blk)
    for (Eigen::Index i = 0; i < keep; ++i) idx.push_back(blk * n + i);
  Mat<Scalar> out(idx.size(), idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) out(r, c) = M(idx[r], idx[c]);
  return out;
}

template <class Scalar>
Blocks2<Scalar> transpose_aux(const Blocks2<Scalar>& K, bool operator_too) {
  Blocks2<Scalar> out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out[a][b] = operator_too ? Mat<Scalar>(K[b][a].transpose()) : K[b][a];
  return out;
}

template <class Scalar>
Blocks2<Scalar> assembled_blocks(const KMatrixOp<Scalar>& K) {
  Blocks2<Scalar> out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out[a][b] = K.entry(a, b);
  return out;
}

}  // namespace

std::string to_string(KVariant v) {
  switch (v) {
    case KVariant::Printed: return "printed";
    case KVariant::K21Rescaled: return "k21-rescaled";
    case KVariant::K21RhoMirrored: return "k21-rho-mirrored";
    case KVariant::K21RescaledSwap: return "k21-rescaled-eta-swap";
  }
  return "unknown";
}

std::string to_string(DualForm f) { return f == DualForm::Printed ? "printed" : "unshifted"; }

template <class Scalar>
Mat<Scalar> LOperator<Scalar>::assembled() const {
  const Eigen::Index n = blocks[0][0].rows();
  Mat<Scalar> M(2 * n, 2 * n);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) M.block(a * n, b * n, n, n) = blocks[a][b];
  return M;
}

template <class Scalar>
Mat<Scalar> KMatrixOp<Scalar>::entry(int i, int j) const {
  return blocks[i][j] + scalar_part(i, j) * identity<Scalar>(blocks[i][j].rows());
}

template <class Scalar>
Mat<Scalar> KMatrixOp<Scalar>::assembled() const {
  const Eigen::Index n = blocks[0][0].rows();
  Mat<Scalar> M(2 * n, 2 * n);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) M.block(a * n, b * n, n, n) = entry(a, b);
  return M;
}

template <class Scalar>
RMatrix<Scalar> r_matrix(Scalar z, const QParams& q) {
  if (z == Scalar(0)) throw DomainError("r_matrix: z = 0");
  const Scalar a = q.sqrt_q * z - q.inv_sqrt_q / z;
  const Scalar b = z - Scalar(1) / z;
  const Scalar c(q.s());
  RMatrix<Scalar> R{z, Eigen::Matrix<Scalar, 4, 4>::Zero(), q};
  R.entries(0, 0) = a;
  R.entries(1, 1) = b;
  R.entries(1, 2) = c;
  R.entries(2, 1) = c;
  R.entries(2, 2) = b;
  R.entries(3, 3) = a;
  return R;
}

template <class Scalar>
double ybe_residual(Scalar z1, Scalar z2, const QParams& q, double perturb) {
  auto R = [&](Scalar z) {
    Mat<Scalar> m = r_matrix(z, q).entries;
    m(0, 0) += perturb;
    return m;
  };
  const Mat<Scalar> I2 = identity<Scalar>(2);
  Mat<Scalar> P23 = Mat<Scalar>::Zero(8, 8);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) P23(4 * a + 2 * c + b, 4 * a + 2 * b + c) = Scalar(1);
  const Mat<Scalar> R12 = kron(R(z1 / z2), I2);
  const Mat<Scalar> R13 = P23 * kron(R(z1), I2) * P23;
  const Mat<Scalar> R23 = kron(I2, R(z2));
  return rel_diff(R12 * R13 * R23, R23 * R13 * R12);
}

template <class Scalar>
LOperator<Scalar> l_operator(Scalar z, const SpinRep<Scalar>& rep) {
  if (z == Scalar(0)) throw DomainError("l_operator: z = 0");
  const Mat<Scalar> qp = rep.qN(0.5), qm = rep.qN(-0.5);
  const Scalar s(rep.q.s());
  LOperator<Scalar> L{z, {}};
  L.blocks[0][0] = z * qp - qm / z;
  L.blocks[0][1] = s * rep.Aminus;
  L.blocks[1][0] = s * rep.Aplus;
  L.blocks[1][1] = z * qm - qp / z;
  return L;
}

template <class Scalar>
double rll_residual(Scalar z1, Scalar z2, const SpinRep<Scalar>& rep) {
  const Mat<Scalar> R = r_on(z1 / z2, rep.q, rep.dim);
  const Mat<Scalar> L1 = on_leg(l_operator(z1, rep).blocks, 1);
  const Mat<Scalar> L2 = on_leg(l_operator(z2, rep).blocks, 2);
  return rel_diff(R * L1 * L2, L2 * L1 * R);
}

template <class Scalar>
KMatrixOp<Scalar> build_k_matrix(Scalar z, const TridiagonalPair<Scalar>& pair, const AWStructure<Scalar>& s,
                                 KVariant variant, int branch_sign, bool rho_solution) {
  if (s.rho == Scalar(0) || s.rho_star == Scalar(0))
    throw UnsupportedRegime("build_k_matrix: rho * rho* = 0");
  const QParams& q = pair.q;
  const double p = q.sqrt_q, P = q.P();
  const Scalar sq(q.s());
  const Scalar rho = rho_solution ? s.rho : s.rho_star;
  const Scalar rho_other = rho_solution ? s.rho_star : s.rho;
  const Scalar r = Scalar(branch_sign) * std::sqrt(rho / rho_other);
  const Mat<Scalar> CsA = qcomm(pair.A_star, pair.A, q);
  const Mat<Scalar> CAs = qcomm(pair.A, pair.A_star, q);

  KMatrixOp<Scalar> K;
  K.z = z;
  K.rho_used = s.rho;
  K.rho_star_used = s.rho_star;
  K.branch = r;
  K.variant = variant;
  const Scalar rA = rho_solution ? Scalar(1) : r;
  const Scalar rS = rho_solution ? r : Scalar(1);
  K.blocks[0][0] = p * z * rA * pair.A - rS * pair.A_star / (p * z);
  K.blocks[0][1] = -r * sq * CsA;
  K.blocks[1][0] = -(r / rho) * sq * CAs;
  K.blocks[1][1] = -rA * pair.A / (p * z) + p * z * rS * pair.A_star;

  Scalar eta = s.eta, eta_star = s.eta_star;
  if (variant == KVariant::K21RescaledSwap) std::swap(eta, eta_star);
  const Scalar zz = (p * z * z + Scalar(1) / (p * z * z)) / P;
  K.scalar_part(0, 0) = (p * z * eta_star - eta / (p * z)) / (rho * P);
  K.scalar_part(1, 1) = (z * eta / p - p * eta_star / z) / (rho * P);
  K.scalar_part(0, 1) = -rho * zz - r * s.omega;
  K.scalar_part(1, 0) = (variant == KVariant::K21RhoMirrored ? -rho * zz : -zz) - (r / rho) * s.omega;

  if (variant == KVariant::K21Rescaled || variant == KVariant::K21RescaledSwap) {
    const Scalar f = Scalar(1) / (sq * sq);
    K.blocks[1][0] *= f;
    K.scalar_part(1, 0) *= f;
  }
  return K;
}

template <class Scalar>
double reflection_residual_of(const Blocks2<Scalar>& K1, const Blocks2<Scalar>& K2, Scalar r_first,
                              Scalar r_middle, const QParams& q, std::optional<int> interior) {
  const Eigen::Index n = K1[0][0].rows();
  const Mat<Scalar> Ra = r_on(r_first, q, n), Rb = r_on(r_middle, q, n);
  const Mat<Scalar> M1 = on_leg(K1, 1), M2 = on_leg(K2, 2);
  Mat<Scalar> lhs = Ra * M1 * Rb * M2;
  Mat<Scalar> rhs = M2 * Rb * M1 * Ra;
  if (interior) {
    lhs = interior_rows(lhs, n, *interior);
    rhs = interior_rows(rhs, n, *interior);
  }
  return rel_diff(lhs, rhs);
}

template <class Scalar>
double reflection_residual(Scalar z1, Scalar z2, const TridiagonalPair<Scalar>& pair, const AWStructure<Scalar>& s,
                           KVariant variant, int branch_sign) {
  const auto K1 = assembled_blocks(build_k_matrix(z1, pair, s, variant, branch_sign));
  const auto K2 = assembled_blocks(build_k_matrix(z2, pair, s, variant, branch_sign));
  std::optional<int> interior;
  if (!pair.exact_dim)
    interior = interior_size(pair, reflection_margin(pair.bandwidth_A, pair.bandwidth_Astar));
  return reflection_residual_of(K1, K2, z1 / z2, z1 * z2, pair.q, interior);
}

template <class Scalar>
double dual_reflection_residual(Scalar z1, Scalar z2, const TridiagonalPair<Scalar>& pair,
                                const AWStructure<Scalar>& s, KVariant variant, DualForm form) {
  const bool full = form == DualForm::Unshifted;
  auto kstar = [&](Scalar z) {
    return transpose_aux(assembled_blocks(build_k_matrix(Scalar(1) / z, pair, s, variant, 1, false)), full);
  };
  std::optional<int> interior;
  if (!pair.exact_dim)
    interior = interior_size(pair, reflection_margin(pair.bandwidth_A, pair.bandwidth_Astar));
  const Scalar middle = full ? Scalar(1) / (z1 * z2) : Scalar(1.0 / pair.q.q) / (z1 * z2);
  return reflection_residual_of(kstar(z1), kstar(z2), z2 / z1, middle, pair.q, interior);
}

template <class Scalar>
std::pair<TridiagonalPair<Scalar>, AWStructure<Scalar>> equalize_rho(const TridiagonalPair<Scalar>& pair,
                                                                    const AWStructure<Scalar>& s) {
  const Scalar t = std::sqrt(s.rho / s.rho_star);
  TridiagonalPair<Scalar> out = pair;
  out.A_star = t * pair.A_star;
  AWStructure<Scalar> st = s;
  st.rho_star = t * t * s.rho_star;
  st.omega = t * s.omega;
  st.eta = t * s.eta;
  st.eta_star = t * t * s.eta_star;
  return {out, st};
}

template struct RMatrix<cplx>;
template struct LOperator<cplx>;
template struct KMatrixOp<cplx>;
template RMatrix<cplx> r_matrix<cplx>(cplx, const QParams&);
template double ybe_residual<cplx>(cplx, cplx, const QParams&, double);
template LOperator<cplx> l_operator<cplx>(cplx, const SpinRep<cplx>&);
template double rll_residual<cplx>(cplx, cplx, const SpinRep<cplx>&);
template KMatrixOp<cplx> build_k_matrix<cplx>(cplx, const TridiagonalPair<cplx>&, const AWStructure<cplx>&,
                                              KVariant, int, bool);
template double reflection_residual_of<cplx>(const Blocks2<cplx>&, const Blocks2<cplx>&, cplx, cplx,
                                             const QParams&, std::optional<int>);
template double reflection_residual<cplx>(cplx, cplx, const TridiagonalPair<cplx>&, const AWStructure<cplx>&,
                                          KVariant, int);
template double dual_reflection_residual<cplx>(cplx, cplx, const TridiagonalPair<cplx>&,
                                               const AWStructure<cplx>&, KVariant, DualForm);
template std::pair<TridiagonalPair<cplx>, AWStructure<cplx>> equalize_rho<cplx>(const TridiagonalPair<cplx>&,
                                                                              const AWStructure<cplx>&);

}  // namespace awq
