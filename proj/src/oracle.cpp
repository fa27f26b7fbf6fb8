#include "awq/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include <functional>

namespace awq {

namespace {

inline int bit(unsigned long s, int i, int L) { return static_cast<int>((s >> (L - 1 - i)) & 1UL); }
inline unsigned long flip(unsigned long s, int i, int L) { return s ^ (1UL << (L - 1 - i)); }

Eigen::VectorXd dense_kernel(const Eigen::MatrixXd& G) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(G);
  lu.setThreshold(1e-10);
  const Eigen::MatrixXd K = lu.kernel();
  if (K.cols() != 1) throw DomainError("stationary_distribution: kernel dimension != 1 (generator not irreducible)");
  return K.col(0);
}

bool try_match(int u, double thr, const Eigen::MatrixXd& C, std::vector<int>& match, std::vector<char>& seen) {
  for (int v = 0; v < C.cols(); ++v) {
    if (seen[v] || C(u, v) > thr) continue;
    seen[v] = 1;
    if (match[v] < 0 || try_match(match[v], thr, C, match, seen)) {
      match[v] = u;
      return true;
    }
  }
  return false;
}

bool perfect_matching(const Eigen::MatrixXd& C, double thr) {
  const int n = static_cast<int>(C.rows());
  std::vector<int> match(n, -1);
  for (int u = 0; u < n; ++u) {
    std::vector<char> seen(n, 0);
    if (!try_match(u, thr, C, match, seen)) return false;
  }
  return true;
}

}  // namespace

MarkovGenerator build_generator(const ASEPRates& rates, int L) {
  return build_generator(rates.alpha, rates.beta_r, rates.gamma_r, rates.delta_r, rates.q.q, L);
}

MarkovGenerator build_generator(double alpha, double beta_r, double gamma_r, double delta_r, double q_hop, int L) {
  if (L < 1 || L > 14) throw DomainError("build_generator: L must lie in [1,14]");
  if (alpha < 0 || beta_r < 0 || gamma_r < 0 || delta_r < 0 || !(q_hop > 0))
    throw DomainError("build_generator: rates must be nonnegative and q positive");
  const unsigned long n = 1UL << L;
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  auto add = [&](unsigned long to, unsigned long from, double rate) {
    if (rate == 0.0) return;
    trip.emplace_back(static_cast<int>(to), static_cast<int>(from), rate);
    out(from) += rate;
  };
  for (unsigned long s = 0; s < n; ++s) {
    add(flip(s, 0, L), s, bit(s, 0, L) == 0 ? alpha : gamma_r);
    add(flip(s, L - 1, L), s, bit(s, L - 1, L) == 1 ? beta_r : delta_r);
    for (int i = 0; i + 1 < L; ++i) {
      const int b0 = bit(s, i, L), b1 = bit(s, i + 1, L);
      if (b0 == 1 && b1 == 0) add(flip(flip(s, i, L), i + 1, L), s, 1.0);
      if (b0 == 0 && b1 == 1) add(flip(flip(s, i, L), i + 1, L), s, q_hop);
    }
  }
  for (unsigned long s = 0; s < n; ++s) trip.emplace_back(static_cast<int>(s), static_cast<int>(s), -out(s));
  MarkovGenerator g{L, Eigen::SparseMatrix<double>(n, n), alpha, beta_r, gamma_r, delta_r, q_hop};
  g.matrix.setFromTriplets(trip.begin(), trip.end());
  const Eigen::RowVectorXd colsum = Eigen::RowVectorXd::Ones(n) * g.matrix;
  if (colsum.cwiseAbs().maxCoeff() > 1e-12) throw ConventionError("build_generator: column sums are not zero");
  return g;
}

StationaryDistribution stationary_distribution(const MarkovGenerator& g) {
  const Eigen::Index n = g.matrix.rows();
  if (g.L <= 8) dense_kernel(Eigen::MatrixXd(g.matrix));

  const double scale = g.matrix.coeffs().cwiseAbs().maxCoeff();
  Eigen::SparseMatrix<double> S = g.matrix;
  Eigen::SparseMatrix<double> I(n, n);
  I.setIdentity();
  S -= (1e-13 * scale) * I;
  S.makeCompressed();
  Eigen::VectorXd p = Eigen::VectorXd::Constant(n, 1.0 / n);
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.analyzePattern(S);
  lu.factorize(S);
  bool ok = lu.info() == Eigen::Success;
  for (int it = 0; ok && it < 4; ++it) {
    p = lu.solve(p);
    ok = lu.info() == Eigen::Success && p.allFinite();
    if (ok) p /= p.sum();
  }
  auto resid = [&](const Eigen::VectorXd& x) { return (g.matrix * x).cwiseAbs().maxCoeff(); };
  if (!ok || resid(p) > 1e-12) {
    if (g.L > 8) throw ConventionError("stationary_distribution: inverse iteration did not converge");
    p = dense_kernel(Eigen::MatrixXd(g.matrix));
    p /= p.sum();
  }
  if (p.minCoeff() < -1e-12) throw ConventionError("stationary_distribution: negative probability");
  p = p.cwiseMax(0.0);
  p /= p.sum();
  return {g.L, p, resid(p)};
}

OracleObservables oracle_observables(const StationaryDistribution& sd, const MarkovGenerator& g) {
  const int L = sd.L;
  OracleObservables out;
  Observables& o = out.obs;
  o.Z_L = 1.0;
  o.density.assign(L, 0.0);
  o.bond_current.assign(std::max(L - 1, 0), 0.0);
  for (Eigen::Index s = 0; s < sd.probs.size(); ++s) {
    const double p = sd.probs(s);
    for (int i = 0; i < L; ++i) {
      const int bi = bit(s, i, L);
      o.density[i] += p * bi;
      for (int j = i + 1; j < L; ++j) o.two_point[{i + 1, j + 1}] += p * bi * bit(s, j, L);
      if (i + 1 < L) {
        const int bj = bit(s, i + 1, L);
        o.bond_current[i] += p * (bi * (1 - bj) - g.q_hop * (1 - bi) * bj);
      }
    }
  }
  out.left_current = g.alpha * (1 - o.density.front()) - g.gamma_r * o.density.front();
  out.right_current = g.beta_r * o.density.back() - g.delta_r * (1 - o.density.back());
  o.current = L > 1 ? o.bond_current.front() : out.left_current;
  return out;
}

namespace {

MatC local_op(const Eigen::Matrix2cd& op, int site, int L) {
  const unsigned long n = 1UL << L;
  MatC M = MatC::Zero(n, n);
  for (unsigned long s = 0; s < n; ++s) {
    const int b = bit(s, site, L);
    for (int b2 = 0; b2 < 2; ++b2) {
      const unsigned long t = b2 == b ? s : flip(s, site, L);
      M(t, s) += op(b2, b);
    }
  }
  return M;
}

}  // namespace

MatC site_op(const Eigen::Matrix2cd& op, int site, int L) {
  if (site < 1 || site > L) throw DomainError("site_op: site out of range");
  return local_op(op, site - 1, L);
}

MatC xxz_qgr(double x, int L) {
  const double D = -0.5 * (x + 1.0 / x), h = 0.5 * (x - 1.0 / x);
  const unsigned long n = 1UL << L;
  MatC H = MatC::Zero(n, n);
  for (unsigned long s = 0; s < n; ++s) {
    for (int i = 0; i + 1 < L; ++i) {
      const int b0 = bit(s, i, L), b1 = bit(s, i + 1, L);
      const double z0 = 1 - 2 * b0, z1 = 1 - 2 * b1;
      H(s, s) += D * z0 * z1 + h * (z1 - z0) + D;
      if (b0 != b1) H(flip(flip(s, i, L), i + 1, L), s) += 2.0;
    }
  }
  return -0.5 * H;
}

VecC gauge_u(int L) {
  const unsigned long n = 1UL << L;
  VecC u(n);
  const double half_pi = 1.57079632679489661923;
  for (unsigned long s = 0; s < n; ++s) {
    double acc = 0;
    for (int m = 1; m <= L; ++m) acc += m * (1 - 2 * bit(s, m - 1, L));
    u(s) = std::polar(1.0, half_pi * acc);
  }
  return u;
}

double gauge_identity_residual(const QParams& q, int L, bool flip_h) {
  const MatC lhs = xxz_qgr(-1.0 / q.q, L);
  MatC Hq = xxz_qgr(q.q, L);
  if (flip_h) {
    const double h = 0.5 * (q.q - 1.0 / q.q);
    for (int i = 0; i + 1 < L; ++i) {
      Eigen::Matrix2cd z;
      z << 1, 0, 0, -1;
      Hq += h * (local_op(z, i + 1, L) - local_op(z, i, L));
    }
  }
  const VecC u = gauge_u(L);
  const MatC rhs = -(u.asDiagonal() * Hq * u.cwiseInverse().asDiagonal());
  return (lhs - rhs).norm() / safe_scale(lhs.norm());
}

XXZModel build_xxz(const ASEPRates& rates, int L, double mu, XXZForm form) {
  if (L < 2 || L > 12) throw DomainError("build_xxz: L must lie in [2,12]");
  const double q = rates.q.q, p = rates.q.sqrt_q;
  const double al = rates.alpha, be = rates.beta_r, ga = rates.gamma_r, de = rates.delta_r;
  Eigen::Matrix2cd sz, sp, sm;
  sz << 1, 0, 0, -1;
  sp << 0, 1, 0, 0;
  sm << 0, 0, 1, 0;
  const unsigned long n = 1UL << L;
  const MatC I = MatC::Identity(n, n);

  XXZModel m;
  m.L = L;
  m.mu = mu;
  m.form = form;
  double lexp = L - 1;
  if (form == XXZForm::Printed) {
    m.H_bulk = xxz_qgr(q, L);
    m.Delta_q = -0.5 * (q + 1 / q);
    m.h_field = 0.5 * (q - 1 / q);
  } else {
    const double D = 0.5 * (p + 1 / p), h = 0.5 * (p - 1 / p);
    MatC H = MatC::Zero(n, n);
    for (int i = 0; i + 1 < L; ++i) {
      const MatC zz = local_op(sz, i, L) * local_op(sz, i + 1, L);
      const MatC flipxy = 2.0 * (local_op(sp, i, L) * local_op(sm, i + 1, L) + local_op(sm, i, L) * local_op(sp, i + 1, L));
      H += flipxy + D * (zz - I) + h * (local_op(sz, i + 1, L) - local_op(sz, i, L));
    }
    m.H_bulk = -H / (2 * p);
    m.Delta_q = D;
    m.h_field = h;
    lexp = 0.5 * (L - 1);
  }
  m.B1 = ((al + ga) * I + (al - ga) * local_op(sz, 0, L) - 2 * al * mu * local_op(sm, 0, L) -
          2 * ga / mu * local_op(sp, 0, L)) /
         (2 * q);
  m.BL = ((be + de) * I - (be - de) * local_op(sz, L - 1, L) - 2 * de * mu * std::pow(q, lexp) * local_op(sm, L - 1, L) -
          2 * be / mu * std::pow(q, -lexp) * local_op(sp, L - 1, L)) /
         (2 * q);
  m.H = m.H_bulk + m.B1 + m.BL;
  return m;
}

VecC balanced_eigenvalues(MatC M) {
  const Eigen::Index n = M.rows();
  bool done = false;
  for (int sweep = 0; !done && sweep < 100; ++sweep) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0, r = 0;
      for (Eigen::Index k = 0; k < n; ++k)
        if (k != i) {
          c += std::abs(M(k, i));
          r += std::abs(M(i, k));
        }
      if (c == 0 || r == 0) continue;
      double f = 1;
      const double total = c + r;
      while (c < r / 2) c *= 2, r /= 2, f *= 2;
      while (c > r * 2) c /= 2, r *= 2, f /= 2;
      if ((c + r) < 0.95 * total) {
        done = false;
        M.col(i) *= f;
        M.row(i) /= f;
      }
    }
  }
  return Eigen::ComplexEigenSolver<MatC>(M, false).eigenvalues();
}

double bottleneck_distance(const VecC& a, const VecC& b) {
  if (a.size() != b.size()) throw DomainError("bottleneck_distance: size mismatch");
  const Eigen::Index n = a.size();
  Eigen::MatrixXd C(n, n);
  std::vector<double> all;
  all.reserve(n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      C(i, j) = std::abs(a(i) - b(j));
      all.push_back(C(i, j));
    }
  std::sort(all.begin(), all.end());
  std::size_t lo = 0, hi = all.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (perfect_matching(C, all[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return all[lo];
}

double spectrum_compare(const MarkovGenerator& g, const XXZModel& m) {
  if (g.L != m.L) throw DomainError("spectrum_compare: L mismatch");
  const MatC gamma = Eigen::MatrixXd(g.matrix).cast<cplx>();
  return bottleneck_distance(balanced_eigenvalues(gamma), balanced_eigenvalues(-g.q_hop * m.H));
}

}  // namespace awq
