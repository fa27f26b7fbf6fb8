#include "awq/awalgebra.hpp"

namespace awq {

namespace {

template <class Scalar>
Mat<Scalar> corner(const Mat<Scalar>& M, int n) {
  return M.topLeftCorner(n, n);
}

template <class Scalar>
int effective_size(const TridiagonalPair<Scalar>& pair, int margin) {
  if (pair.exact_dim) return pair.dim();
  return interior_size(pair, margin);
}

template <class Scalar>
Eigen::Map<const Vec<Scalar>> flat(const Mat<Scalar>& M) {
  return Eigen::Map<const Vec<Scalar>>(M.data(), M.size());
}

// Least-squares fit of L = -x0 X - x1 Y - x2 I.
template <class Scalar>
Vec<Scalar> fit_linear(const Mat<Scalar>& L, const Mat<Scalar>& X, const Mat<Scalar>& Y, double& residual) {
  const Eigen::Index n = L.rows();
  const Mat<Scalar> I = identity<Scalar>(n);
  Mat<Scalar> M(L.size(), 3);
  M.col(0) = -flat(X);
  M.col(1) = -flat(Y);
  M.col(2) = -flat(I);
  Eigen::Vector3d cs;
  for (int k = 0; k < 3; ++k) {
    cs(k) = safe_scale(M.col(k).norm());
    M.col(k) /= Scalar(cs(k));
  }
  Eigen::ColPivHouseholderQR<Mat<Scalar>> qr(M);
  qr.setThreshold(1e-10);
  if (qr.rank() < 3) throw DegenerateFitError("fit_structure_constants: rank-deficient design matrix");
  Vec<Scalar> x = qr.solve(flat(L));
  const Vec<Scalar> fitted = M * x;
  for (int k = 0; k < 3; ++k) x(k) /= Scalar(cs(k));
  const double ln = flat(L).norm();
  residual = ln > 0 ? (fitted - flat(L)).norm() / ln : fitted.norm();
  return x;
}

}  // namespace

template <class Scalar>
int bandwidth(const Mat<Scalar>& M) {
  int bw = 0;
  for (Eigen::Index j = 0; j < M.cols(); ++j)
    for (Eigen::Index i = 0; i < M.rows(); ++i)
      if (M(i, j) != Scalar(0)) bw = std::max(bw, static_cast<int>(std::abs(i - j)));
  return bw;
}

int aw_margin(int bw_A, int bw_Astar) { return 2 * (bw_A + bw_Astar) + std::max(bw_A, bw_Astar); }
int tridiagonal_margin(int bw_A, int bw_Astar) { return 3 * (bw_A + bw_Astar); }
int reflection_margin(int bw_A, int bw_Astar) { return 2 * (bw_A + bw_Astar) + 2; }

template <class Scalar>
int interior_size(const TridiagonalPair<Scalar>& pair, int margin) {
  const int n = pair.dim() - margin;
  if (n < 1) throw DomainError("truncated pair too small for the interior margin");
  return n;
}

template <class Scalar>
TridiagonalPair<Scalar> build_coideal_ops(const ChevalleyRep<Scalar>& rep, const CoidealParams<Scalar>& cp,
                                          Rescaling rescale) {
  const double s = rep.q.s();
  const Scalar sp = rescale == Rescaling::Applied ? Scalar(s) : Scalar(1);
  const Scalar sm = rescale == Rescaling::Applied ? Scalar(-s) : Scalar(1);
  const Mat<Scalar> h0 = rep.qH0(-0.5), h1 = rep.qH1(-0.5);
  Mat<Scalar> A = cp.u * sp * rep.E0p * h0 + cp.v * sm * rep.E0m * h0 + cp.k * rep.qH0(-1.0);
  Mat<Scalar> As = cp.u_star * sp * rep.E1p * h1 + cp.v_star * sm * rep.E1m * h1 + cp.k_star * rep.qH1(-1.0);
  const int bA = bandwidth(A), bS = bandwidth(As);
  return {std::move(A), std::move(As), bA, bS, rep.dim(), rep.q};
}

template <class Scalar>
AWStructure<Scalar> structure_constants_prop1(const CoidealParams<Scalar>& cp, Scalar l_v0, const QParams& q) {
  const double f = q.q - 1.0 / q.q, s = q.s();
  const Scalar S = cp.u * cp.u_star * q.sqrt_q + cp.v_star * cp.v * q.inv_sqrt_q;
  AWStructure<Scalar> st;
  st.beta_aw = Scalar(q.beta());
  st.gamma = st.gamma_star = Scalar(0);
  st.rho = -cp.u * cp.v * f * f;
  st.rho_star = -cp.u_star * cp.v_star * f * f;
  st.omega = s * s * (cp.k * cp.k_star + l_v0 * S);
  st.eta = f * s * (cp.k * S + l_v0 * cp.u * cp.v * cp.k_star);
  st.eta_star = f * s * (cp.k_star * S + l_v0 * cp.u_star * cp.v_star * cp.k);
  return st;
}

template <class Scalar>
AWStructure<Scalar> structure_constants_prop1_corrected(const CoidealParams<Scalar>& cp, Scalar l_v0,
                                                        const QParams& q) {
  AWStructure<Scalar> st = structure_constants_prop1(cp, l_v0, q);
  st.omega = -st.omega;
  return st;
}

template <class Scalar>
CoidealParams<Scalar> absorb_nu(const CoidealParams<Scalar>& cp, Scalar nu) {
  CoidealParams<Scalar> out = cp;
  out.u = cp.u * nu;
  out.v = cp.v / nu;
  return out;
}

double l_v0_closed_form(int j_twice, const QParams& q) {
  return q.pow(0.5 * (j_twice + 1)) + q.pow(-0.5 * (j_twice + 1));
}

template <class Scalar>
FitResult<Scalar> fit_structure_constants(const TridiagonalPair<Scalar>& pair) {
  const int n = effective_size(pair, aw_margin(pair.bandwidth_A, pair.bandwidth_Astar));
  const QParams& q = pair.q;
  const Mat<Scalar> C = qcomm(pair.A, pair.A_star, q);
  const Mat<Scalar> L1 = corner<Scalar>(qcomm(C, pair.A, q), n);
  const Mat<Scalar> L2 = corner<Scalar>(qcomm(pair.A_star, C, q), n);
  const Mat<Scalar> A = corner<Scalar>(pair.A, n), As = corner<Scalar>(pair.A_star, n);
  double r1 = 0, r2 = 0;
  const Vec<Scalar> x1 = fit_linear<Scalar>(L1, As, A, r1);
  const Vec<Scalar> x2 = fit_linear<Scalar>(L2, A, As, r2);
  FitResult<Scalar> out;
  out.s.beta_aw = Scalar(q.beta());
  out.s.gamma = out.s.gamma_star = Scalar(0);
  out.s.rho = x1(0);
  out.s.omega = x1(1);
  out.s.eta = x1(2);
  out.s.rho_star = x2(0);
  out.s.eta_star = x2(2);
  out.residual = std::max(r1, r2);
  out.omega_mismatch = std::abs(x1(1) - x2(1)) / std::max(1.0, std::abs(x1(1)));
  if (out.residual < 1e-8 && out.omega_mismatch > 1e-8)
    throw ConventionError("fit_structure_constants: omega differs between the two relations");
  return out;
}

template <class Scalar>
ResidualPair aw_residual(const TridiagonalPair<Scalar>& pair, const AWStructure<Scalar>& s) {
  const int n = effective_size(pair, aw_margin(pair.bandwidth_A, pair.bandwidth_Astar));
  const QParams& q = pair.q;
  const Mat<Scalar> C = qcomm(pair.A, pair.A_star, q);
  const Mat<Scalar> L1 = corner<Scalar>(qcomm(C, pair.A, q), n);
  const Mat<Scalar> L2 = corner<Scalar>(qcomm(pair.A_star, C, q), n);
  const Mat<Scalar> A = corner<Scalar>(pair.A, n), As = corner<Scalar>(pair.A_star, n);
  const Mat<Scalar> I = identity<Scalar>(n);
  const double in = I.norm();
  const double sc1 = L1.norm() + std::abs(s.rho) * As.norm() + std::abs(s.omega) * A.norm() + std::abs(s.eta) * in;
  const double sc2 =
      L2.norm() + std::abs(s.rho_star) * A.norm() + std::abs(s.omega) * As.norm() + std::abs(s.eta_star) * in;
  const double r1 = (L1 + s.rho * As + s.omega * A + s.eta * I).norm() / safe_scale(sc1);
  const double r2 = (L2 + s.rho_star * A + s.omega * As + s.eta_star * I).norm() / safe_scale(sc2);
  return {r1, r2};
}

template <class Scalar>
ResidualPair tridiagonal_residual(const TridiagonalPair<Scalar>& pair, const AWStructure<Scalar>& s) {
  const int n = effective_size(pair, tridiagonal_margin(pair.bandwidth_A, pair.bandwidth_Astar));
  auto one = [&](const Mat<Scalar>& X, const Mat<Scalar>& Y, Scalar gamma, Scalar rho) {
    const Mat<Scalar> XXY = X * X * Y, XYX = X * Y * X, YXX = Y * X * X, XY = X * Y, YX = Y * X;
    const Mat<Scalar> inner = XXY - s.beta_aw * XYX + YXX - gamma * (XY + YX) - rho * Y;
    const double sc = X.norm() * (XXY.norm() + std::abs(s.beta_aw) * XYX.norm() + YXX.norm() +
                                  std::abs(gamma) * (XY.norm() + YX.norm()) + std::abs(rho) * Y.norm());
    return corner<Scalar>(comm(X, inner), n).norm() / safe_scale(sc);
  };
  return {one(pair.A, pair.A_star, s.gamma, s.rho), one(pair.A_star, pair.A, s.gamma_star, s.rho_star)};
}

template <class Scalar>
TridiagonalPair<Scalar> affine_transform(const TridiagonalPair<Scalar>& pair, Scalar t, Scalar t_star,
                                         Scalar c_prime, Scalar c_star) {
  TridiagonalPair<Scalar> out = pair;
  const Mat<Scalar> I = identity<Scalar>(pair.dim());
  out.A = t * pair.A + c_prime * I;
  out.A_star = t_star * pair.A_star + c_star * I;
  return out;
}

template <class Scalar>
TridiagonalPair<Scalar> build_basic_representation(int N, const AWParams<Scalar>& p) {
  if (N < 1) throw DomainError("build_basic_representation: N must be positive");
  Mat<Scalar> A = Mat<Scalar>::Zero(N, N), As = Mat<Scalar>::Zero(N, N);
  for (int n = 0; n < N; ++n) {
    const auto rc = recurrence_coeffs(n, p);
    A(n, n) = rc.a_n;
    if (n + 1 < N) {
      A(n + 1, n) = rc.b_n;
      A(n, n + 1) = recurrence_coeffs(n + 1, p).c_n;
    }
    As(n, n) = dual_eigenvalue(n, p);
  }
  return {std::move(A), std::move(As), N > 1 ? 1 : 0, 0, std::nullopt, p.q};
}

template <class Scalar>
AWStructure<Scalar> basic_structure_constants(const AWParams<Scalar>& p) {
  const double q = p.q.q;
  const Scalar e1 = p.a + p.b + p.c + p.d;
  const Scalar e2 = p.a * p.b + p.a * p.c + p.a * p.d + p.b * p.c + p.b * p.d + p.c * p.d;
  const Scalar e3 = p.a * p.b * p.c + p.a * p.b * p.d + p.a * p.c * p.d + p.b * p.c * p.d;
  const Scalar e4 = p.abcd();
  const double f = (q - 1 / q) * (q - 1 / q), g = (1 - q) * (1 - q) * (1 + q) / (q * q * q);
  AWStructure<Scalar> s;
  s.beta_aw = Scalar(p.q.beta());
  s.gamma = s.gamma_star = Scalar(0);
  s.rho = Scalar(-f);
  s.rho_star = -e4 * f / q;
  s.omega = -(1 - 1 / q) * (1 - 1 / q) * (e3 + q * e1);
  s.eta = g * (e4 + q * e2 + q * q);
  s.eta_star = g * (q * e3 + e1 * e4);
  return s;
}

template struct AWStructure<cplx>;
template struct TridiagonalPair<cplx>;
template int bandwidth<cplx>(const MatC&);
template int interior_size<cplx>(const TridiagonalPair<cplx>&, int);
template TridiagonalPair<cplx> build_coideal_ops<cplx>(const ChevalleyRep<cplx>&, const CoidealParams<cplx>&,
                                                       Rescaling);
template AWStructure<cplx> structure_constants_prop1<cplx>(const CoidealParams<cplx>&, cplx, const QParams&);
template AWStructure<cplx> structure_constants_prop1_corrected<cplx>(const CoidealParams<cplx>&, cplx,
                                                                     const QParams&);
template CoidealParams<cplx> absorb_nu<cplx>(const CoidealParams<cplx>&, cplx);
template FitResult<cplx> fit_structure_constants<cplx>(const TridiagonalPair<cplx>&);
template ResidualPair aw_residual<cplx>(const TridiagonalPair<cplx>&, const AWStructure<cplx>&);
template ResidualPair tridiagonal_residual<cplx>(const TridiagonalPair<cplx>&, const AWStructure<cplx>&);
template TridiagonalPair<cplx> affine_transform<cplx>(const TridiagonalPair<cplx>&, cplx, cplx, cplx, cplx);
template TridiagonalPair<cplx> build_basic_representation<cplx>(int, const AWParams<cplx>&);
template AWStructure<cplx> basic_structure_constants<cplx>(const AWParams<cplx>&);

}  // namespace awq
