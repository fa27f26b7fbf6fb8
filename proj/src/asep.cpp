#include "awq/asep.hpp"

#include "awq/oracle.hpp"

namespace awq {

ASEPRates::ASEPRates(double alpha_, double beta_, double gamma_, double delta_, double q_)
    : alpha(alpha_), beta_r(beta_), gamma_r(gamma_), delta_r(delta_), q(q_), x0(std::sqrt(q_)) {
  if (alpha < 0 || beta_r < 0 || gamma_r < 0 || delta_r < 0) throw DomainError("ASEPRates: negative rate");
  if (!(alpha + gamma_r > 0) || !(beta_r + delta_r > 0)) throw DomainError("ASEPRates: a boundary is inert");
}

std::pair<cplx, cplx> kappa_pm(double u, double v, const QParams& q) {
  if (u == 0.0) throw DomainError("kappa_pm: u = 0");
  const double B = u - v - (1 - q.q);
  const cplx sq = std::sqrt(cplx(B * B + 4 * u * v));
  return {(-B + sq) / (2 * u), (-B - sq) / (2 * u)};
}

AWParams<cplx> kappa_map(const ASEPRates& r) {
  const auto [ap, am] = kappa_pm(r.alpha, r.gamma_r, r.q);
  const auto [bp, bm] = kappa_pm(r.beta_r, r.delta_r, r.q);
  const cplx a = ap, b = bp, c = am, d = bm;
  if (std::abs(a * c + r.gamma_r / r.alpha) > 1e-12 * (1 + r.gamma_r / r.alpha) ||
      std::abs(b * d + r.delta_r / r.beta_r) > 1e-12 * (1 + r.delta_r / r.beta_r))
    throw ConventionError("kappa_map: product identities fail");
  return AWParams<cplx>(a, b, c, d, r.q);
}

double x0_from_boundary(const ASEPRates& r) {
  const AWParams<cplx> p = kappa_map(r);
  const double f = r.q.sqrt_q / (1 - r.q.q);
  const cplx x_right = r.beta_r * f * (1.0 + p.b) * (1.0 + p.d);
  const cplx x_left = r.alpha * f * (1.0 + p.a) * (1.0 + p.c);
  if (std::abs(x_right - x_left) > 1e-12 * std::abs(x_right) || std::abs(x_right.imag()) > 1e-12 * std::abs(x_right))
    throw ConventionError("x0_from_boundary: left and right boundary eigenvalues disagree");
  return x_right.real();
}

namespace {

// unconjugated x^t y
template <class DX, class DY>
auto bil(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) {
  return x.cwiseProduct(y.eval()).sum();
}

}  // namespace

template <class Scalar>
MPAState<Scalar> build_mpa(const ASEPRates& r, int L, int N) {
  if (L < 1) throw DomainError("build_mpa: L >= 1 required");
  if (N < 0) N = L + 2;
  if (N < L + 2) throw DomainError("build_mpa: N >= L + 2 required");
  if (!(r.alpha > 0) || !(r.beta_r > 0)) throw DomainError("build_mpa: alpha, beta > 0 required");
  const double q = r.q.q, x0 = x0_from_boundary(r);
  if (std::abs(x0 - r.x0) > 1e-12) throw ConventionError("build_mpa: boundary eigenvalue differs from q^{1/2}");
  const AWParams<cplx> params = kappa_map(r);
  auto th = [&](int n) { return r.gamma_r / r.alpha * std::pow(q, n); };
  auto ph = [&](int n) { return r.delta_r / r.beta_r * std::pow(q, n); };

  std::vector<cplx> dd(N), ed(N), P(N);
  const double det0 = r.alpha * r.beta_r - r.gamma_r * r.delta_r;
  if (std::abs(det0) < 1e-14) throw DomainError("build_mpa: abcd = 1, representation is singular");
  {
    const double r1 = 1 - q - r.beta_r + r.delta_r, r2 = 1 - q - r.alpha + r.gamma_r;
    dd[0] = (r.alpha * r1 + r.delta_r * r2) / det0;
    ed[0] = (r.gamma_r * r1 + r.beta_r * r2) / det0;
  }
  for (int n = 0; n + 1 < N; ++n) {
    const double m00 = -q * th(n), m11 = -q * ph(n);
    const double det = m00 * m11 - 1.0;
    if (std::abs(det) < 1e-14) throw DomainError("build_mpa: singular recursion step");
    const cplx r1 = q * ed[n] - th(n) * dd[n], r2 = q * dd[n] - ph(n) * ed[n];
    dd[n + 1] = (m11 * r1 - r2) / det;
    ed[n + 1] = (m00 * r2 - r1) / det;
  }
  for (int n = 0; n < N; ++n) {
    cplx num = (1 - q) * (1.0 - dd[n] * ed[n]);
    if (n > 0) num += (q - th(n - 1) * ph(n - 1)) * P[n - 1];
    P[n] = num / (1 - q * th(n) * ph(n));
  }

  MatC d = MatC::Zero(N, N), e = MatC::Zero(N, N);
  for (int n = 0; n < N; ++n) {
    d(n, n) = dd[n];
    e(n, n) = ed[n];
  }
  for (int n = 0; n + 1 < N; ++n) {
    const cplx du = std::sqrt(P[n]);
    const cplx el = du == cplx(0) ? cplx(0) : P[n] / du;
    d(n, n + 1) = du;
    e(n, n + 1) = th(n) * du;
    e(n + 1, n) = el;
    d(n + 1, n) = ph(n) * el;
  }
  const MatC I = MatC::Identity(N, N);
  const MatC D1 = x0 * (I + d) / (1 - q), D0 = x0 * (I + e) / (1 - q);

  MPAState<Scalar> st{D0.template cast<Scalar>(), D1.template cast<Scalar>(), Vec<Scalar>::Unit(N, 0),
                      Vec<Scalar>::Unit(N, 0), params, r, N, x0};
  const Mat<Scalar> C = st.D0 + st.D1;
  Vec<Scalar> acc = st.v_vec;
  for (int i = 0; i < L; ++i) acc = C * acc;
  const double Z = std::real(cplx(bil(st.w_vec, acc)));
  if (!std::isfinite(Z) || Z == 0.0) throw DomainError("build_mpa: vanishing normalization");
  if (Z < 0) st.w_vec = -st.w_vec;
  const MPAInvariants inv = mpa_invariants(st);
  if (inv.max() > 1e-10) throw ConventionError("build_mpa: algebra relations fail, residual " + std::to_string(inv.max()));
  return st;
}

template <class Scalar>
MPAInvariants mpa_invariants(const MPAState<Scalar>& m) {
  const double q = m.rates.q.q, x0 = m.x0;
  const int k = m.N - 2;
  const Mat<Scalar> lhs = m.D1 * m.D0 - Scalar(q) * (m.D0 * m.D1);
  const Mat<Scalar> rhs = Scalar(x0) * (m.D1 + m.D0);
  const double bulk =
      (lhs - rhs).topLeftCorner(k, k).norm() / safe_scale(rhs.topLeftCorner(k, k).norm());
  const Vec<Scalar> left =
      (m.w_vec.transpose() * (Scalar(m.rates.alpha) * m.D0 - Scalar(m.rates.gamma_r) * m.D1)).transpose() -
      Scalar(x0) * m.w_vec;
  const Vec<Scalar> right =
      (Scalar(m.rates.beta_r) * m.D1 - Scalar(m.rates.delta_r) * m.D0) * m.v_vec - Scalar(x0) * m.v_vec;
  return {bulk, left.norm() / x0, right.norm() / x0};
}

template <class Scalar>
JacobiCrosscheck mpa_jacobi_crosscheck(const MPAState<Scalar>& m) {
  const double q = m.rates.q.q, f = (1 - q) / m.x0;
  const AWParams<cplx>& p = m.params;
  JacobiCrosscheck out{0, 0};
  for (int n = 0; n + 2 < m.N; ++n) {
    const cplx dd = f * cplx(m.D1(n, n)) - 1.0, ed = f * cplx(m.D0(n, n)) - 1.0;
    const cplx an = diagonal_coeff(n, p);
    out.diagonal = std::max(out.diagonal, std::abs(dd + ed - an) / (1 + std::abs(an)));
    const cplx Pn = f * cplx(m.D1(n, n + 1)) * f * cplx(m.D0(n + 1, n));
    const cplx lhs = Pn * (1.0 - p.a * p.c * std::pow(q, n)) * (1.0 - p.b * p.d * std::pow(q, n));
    const RecurrenceCoeffs<cplx> rn = symmetric_recurrence_coeffs(n, p);
    const RecurrenceCoeffs<cplx> rn1 = symmetric_recurrence_coeffs(n + 1, p);
    const cplx rhs = rn.b_n * rn1.c_n;
    out.offdiagonal = std::max(out.offdiagonal, std::abs(lhs - rhs) / (1 + std::abs(rhs)));
  }
  return out;
}

std::vector<ConventionCandidate> mpa_convention_audit(const ASEPRates& r, int N) {
  const AWParams<cplx> p = kappa_map(r);
  const double q = r.q.q, sq = r.q.sqrt_q;
  const cplx a = p.a, b = p.b, c = p.c, d = p.d, abcd = p.abcd();
  VecC lam(N);
  for (int n = 0; n < N; ++n) lam(n) = sq / (1 - q) * (b * std::pow(q, -n) + d * std::pow(q, n) + 1.0 + b * d);
  const MatC M1 = lam.asDiagonal();
  const MatC I = MatC::Identity(N, N);
  std::vector<ConventionCandidate> out;
  for (int order = 0; order < 2; ++order) {
    MatC X;
    try {
      const AWParams<cplx> po = order == 0 ? p : AWParams<cplx>(b, a, d, c, r.q);
      X = build_basic_representation(N, po).A;
    } catch (const std::exception&) {
      continue;
    }
    for (int pref = 0; pref < 2; ++pref)
      for (int tr = 0; tr < 2; ++tr) {
        const MatC Xs = tr ? MatC(X.transpose()) : X;
        const MatC M2 = sq / (1 - q) * ((pref == 0 ? a : b) * Xs + (1.0 + a * c) * I);
        MPAState<cplx> st{(M2 - a * c * M1) / (1.0 - abcd), (M1 - b * d * M2) / (1.0 - abcd), VecC::Unit(N, 0),
                          VecC::Unit(N, 0), p, r, N, r.x0};
        std::string label = std::string("prefactor=") + (pref == 0 ? "a" : "b") + ",matrix=" +
                            (tr ? "transposed" : "plain") + ",order=" + (order == 0 ? "abcd" : "badc");
        out.push_back({label, mpa_invariants(st)});
      }
  }
  return out;
}

template <class Scalar>
double mpa_weight(const MPAState<Scalar>& m, unsigned long config, int L) {
  Vec<Scalar> acc = m.v_vec;
  for (int i = L - 1; i >= 0; --i) acc = (((config >> (L - 1 - i)) & 1UL) ? m.D1 : m.D0) * acc;
  return std::real(cplx(bil(m.w_vec, acc)));
}

template <class Scalar>
std::vector<double> mpa_distribution(const MPAState<Scalar>& m, int L) {
  if (L > m.N - 2) throw DomainError("mpa_distribution: L exceeds N - 2");
  const unsigned long n = 1UL << L;
  std::vector<double> w(n);
  double Z = 0, mass = 0;
  for (unsigned long s = 0; s < n; ++s) {
    Z += (w[s] = mpa_weight(m, s, L));
    mass += std::abs(w[s]);
  }
  if (!(std::abs(Z) > 1e-12 * mass)) throw DomainError("mpa_distribution: Z_L vanishes");
  for (double& x : w) {
    x /= Z;
    if (x < -1e-10) throw ConventionError("mpa_distribution: weights of mixed sign");
  }
  return w;
}

template <class Scalar>
Observables observables(const MPAState<Scalar>& m, int L) {
  if (L < 1 || L > m.N - 2) throw DomainError("observables: L must lie in [1, N-2]");
  const Mat<Scalar> C = m.D0 + m.D1;
  std::vector<Vec<Scalar>> right(L + 1), left(L + 1);
  right[0] = m.v_vec;
  left[0] = m.w_vec;
  for (int k = 1; k <= L; ++k) {
    right[k] = C * right[k - 1];
    left[k] = C.transpose() * left[k - 1];
  }
  auto re = [](Scalar x) { return std::real(cplx(x)); };
  Observables o;
  o.Z_L = re(bil(m.w_vec, right[L]));
  if (!(std::isfinite(o.Z_L) && o.Z_L != 0)) throw DomainError("observables: Z_L vanishes");
  const double Zm1 = re(bil(m.w_vec, right[L - 1]));
  o.density.resize(L);
  for (int i = 1; i <= L; ++i) o.density[i - 1] = re(bil(left[i - 1], m.D1 * right[L - i])) / o.Z_L;
  for (int i = 1; i <= L; ++i) {
    for (int j = L; j > i; --j) {
      // left[i-1] D1 C^{j-i-1} D1 right[L-j]
      Vec<Scalar> t = m.D1 * right[L - j];
      for (int k = 0; k < j - i - 1; ++k) t = C * t;
      o.two_point[{i, j}] = re(bil(left[i - 1], m.D1 * t)) / o.Z_L;
    }
  }
  const Mat<Scalar> J = m.D1 * m.D0 - Scalar(m.rates.q.q) * (m.D0 * m.D1);
  for (int i = 1; i < L; ++i) o.bond_current.push_back(re(bil(left[i - 1], J * right[L - i - 1])) / o.Z_L);
  o.current = m.x0 * Zm1 / o.Z_L;
  for (double b : o.bond_current)
    if (std::abs(b - o.current) > 1e-9 * (1 + std::abs(o.current)))
      throw ConventionError("observables: bond current disagrees with x0 Z_{L-1}/Z_L");
  return o;
}

AWStructure<cplx> boundary_aw_constants(const ASEPRates& r, cplx Q) {
  const double x0 = r.x0, p = r.q.sqrt_q, P = r.q.P(), s = r.q.s(), iq = 1 / r.q.q;
  const double al = r.alpha, be = r.beta_r, ga = r.gamma_r, de = r.delta_r;
  AWStructure<cplx> out;
  out.beta_aw = r.q.beta();
  out.gamma = out.gamma_star = 0;
  out.rho = x0 * x0 * be * de * iq * P * P;
  out.rho_star = x0 * x0 * al * ga * iq * P * P;
  out.omega = -(x0 * x0 * (be - de) * (ga - al) - x0 * x0 * (be * ga + al * de) * s * Q);
  out.eta = p * P * std::pow(x0, 3) * (be * de * (ga - al) * Q + (be - de) * (be * ga + al * de) / s);
  out.eta_star = p * P * std::pow(x0, 3) * (al * ga * (be - de) * Q + (al - ga) * (al * de + be * ga) / s);
  return out;
}

AWStructure<cplx> boundary_aw_constants_derived(const ASEPRates& r, cplx Q) {
  const double x0 = r.x0, p = r.q.sqrt_q, s = r.q.s(), q = r.q.q;
  const double c = x0 / (s * std::sqrt(1 - q));
  CoidealParams<cplx> cp{-r.delta_r * c, r.alpha * c / p, -p * r.beta_r * c, r.gamma_r * c,
                         -x0 * (r.delta_r - r.beta_r * p) / (1 - q), x0 * (r.alpha / p - r.gamma_r) / (1 - q)};
  return structure_constants_prop1_corrected<cplx>(cp, s * s * Q, r.q);
}

template <class Scalar>
TridiagonalPair<Scalar> boundary_pair_finite(const ASEPRates& r, const SpinRep<Scalar>& rep) {
  const double x0 = r.x0, p = r.q.sqrt_q, q = r.q.q, sr = std::sqrt(1 - q);
  const Mat<Scalar> A = Scalar(x0 * r.beta_r / sr) * (rep.qN(0.5) * rep.Aplus) -
                        Scalar(x0 * r.delta_r / sr) * (rep.Aminus * rep.qN(0.5)) -
                        Scalar(x0 * (-r.beta_r * p + r.delta_r) / (1 - q)) * rep.qN(1.0);
  const Mat<Scalar> As = Scalar(x0 * r.alpha / sr) * (rep.qN(-0.5) * rep.Aplus) -
                         Scalar(x0 * r.gamma_r / sr) * (rep.Aminus * rep.qN(-0.5)) +
                         Scalar(x0 * (r.alpha / p - r.gamma_r) / (1 - q)) * rep.qN(-1.0);
  return {A, As, bandwidth<Scalar>(A), bandwidth<Scalar>(As), rep.dim, r.q};
}

ChainGenerators chain_generators(int L, const QParams& q) {
  const long n = 1L << L;
  ChainGenerators g;
  g.Aplus = MatC::Zero(n, n);
  g.N = Eigen::VectorXd::Zero(n);
  Eigen::Matrix2cd sp, qp, qm, one;
  sp << 0, 1, 0, 0;
  qp << q.pow(0.25), 0, 0, q.pow(-0.25);
  qm << q.pow(-0.25), 0, 0, q.pow(0.25);
  one.setIdentity();
  for (int i = 0; i < L; ++i) {
    MatC term = MatC::Identity(1, 1);
    for (int k = 0; k < L; ++k) {
      const Eigen::Matrix2cd& f = k < i ? qp : (k == i ? sp : qm);
      term = kron(term, MatC(f));
    }
    g.Aplus += term;
  }
  for (long s = 0; s < n; ++s)
    for (int i = 0; i < L; ++i) g.N(s) += 0.5 * (((s >> (L - 1 - i)) & 1L) ? -1.0 : 1.0);
  g.Aminus = g.Aplus.transpose();
  return g;
}

MatC boundary_charge(const ASEPRates& r, const ChainGenerators& g, ChargeSide side) {
  const double x0 = r.x0, p = r.q.sqrt_q, q = r.q.q, sr = std::sqrt(1 - q);
  auto qN = [&](double pw) { return MatC(qdiag<cplx>(g.N, r.q, pw)); };
  const MatC I = MatC::Identity(g.N.size(), g.N.size());
  if (side == ChargeSide::Right)
    return x0 * r.beta_r / sr * qN(0.5) * g.Aplus - x0 * r.delta_r / sr * g.Aminus * qN(0.5) -
           x0 * (-r.beta_r * p + r.delta_r) / (1 - q) * qN(1.0) + x0 * (r.beta_r - r.delta_r) / (1 - q) * I;
  return x0 * r.alpha / sr * qN(-0.5) * g.Aplus - x0 * r.gamma_r / sr * g.Aminus * qN(-0.5) +
         x0 * (r.alpha / p - r.gamma_r) / (1 - q) * qN(-1.0) + x0 * (r.alpha - r.gamma_r) / (1 - q) * I;
}

double conserved_charge_residual(const ASEPRates& r, int L, ChargeSide which, ChargePairing pairing) {
  if (L < 2 || L > 10) throw DomainError("conserved_charge_residual: L must lie in [2,10]");
  const ChainGenerators g = chain_generators(L, r.q);
  const MatC B = boundary_charge(r, g, which);
  MatC H;
  if (pairing == ChargePairing::Audited) {
    H = xxz_qgr(-r.q.sqrt_q, L);
  } else if (which == ChargeSide::Left) {
    H = xxz_qgr(r.q.q, L);
  } else {
    const VecC u = gauge_u(L);
    H = -(u.asDiagonal() * xxz_qgr(r.q.q, L) * u.cwiseInverse().asDiagonal());
  }
  return rel_comm(B, H);
}

template MPAState<cplx> build_mpa<cplx>(const ASEPRates&, int, int);
template MPAInvariants mpa_invariants<cplx>(const MPAState<cplx>&);
template JacobiCrosscheck mpa_jacobi_crosscheck<cplx>(const MPAState<cplx>&);
template double mpa_weight<cplx>(const MPAState<cplx>&, unsigned long, int);
template std::vector<double> mpa_distribution<cplx>(const MPAState<cplx>&, int);
template Observables observables<cplx>(const MPAState<cplx>&, int);
template TridiagonalPair<cplx> boundary_pair_finite<cplx>(const ASEPRates&, const SpinRep<cplx>&);

}  // namespace awq
