#include "awq/oracle.hpp"
#include "campaign.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

using namespace awq;

namespace {

std::vector<ASEPRates> battery(int n = 5) {
  cli::Rng rng(1);
  std::vector<ASEPRates> out;
  for (const cli::RateSet& r : cli::random_rate_sets(rng, n)) out.emplace_back(r.alpha, r.beta, r.gamma, r.delta, r.q);
  return out;
}

}  // namespace

TEST_CASE("generator structure") {
  for (const ASEPRates& r : battery(3))
    for (int L = 1; L <= 6; ++L) {
      const MarkovGenerator g = build_generator(r, L);
      const Eigen::MatrixXd M(g.matrix);
      CHECK(M.colwise().sum().cwiseAbs().maxCoeff() < 1e-14);
      for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j)
          if (i != j) CHECK(M(i, j) >= 0.0);
    }
  CHECK_THROWS_AS(build_generator(battery(1)[0], 0), DomainError);
  CHECK_THROWS_AS(build_generator(battery(1)[0], 15), DomainError);
}

TEST_CASE("single site by hand") {
  const double al = 0.7, be = 0.4, ga = 0.2, de = 0.1;
  const StationaryDistribution sd = stationary_distribution(build_generator(ASEPRates(al, be, ga, de, 0.3), 1));
  CHECK(sd.probs(1) == doctest::Approx((al + de) / (al + be + ga + de)).epsilon(1e-13));
}

TEST_CASE("two sites against a hand-assembled generator") {
  const double al = 0.7, be = 0.4, ga = 0.2, de = 0.1, q = 0.3;
  // states 00, 01, 10, 11 with site 1 as the high bit
  Eigen::Matrix4d G = Eigen::Matrix4d::Zero();
  auto rate = [&](int to, int from, double w) {
    G(to, from) += w;
    G(from, from) -= w;
  };
  rate(2, 0, al), rate(3, 1, al);  // inject left
  rate(0, 2, ga), rate(1, 3, ga);  // remove left
  rate(0, 1, be), rate(2, 3, be);  // remove right
  rate(1, 0, de), rate(3, 2, de);  // inject right
  rate(1, 2, 1.0);                 // hop right
  rate(2, 1, q);                   // hop left
  const Eigen::MatrixXd M(build_generator(ASEPRates(al, be, ga, de, q), 2).matrix);
  CHECK((M - G).norm() < 1e-15);
  Eigen::FullPivLU<Eigen::Matrix4d> lu(G);
  Eigen::Vector4d k = lu.kernel().col(0);
  k /= k.sum();
  const StationaryDistribution sd = stationary_distribution(build_generator(ASEPRates(al, be, ga, de, q), 2));
  CHECK((sd.probs - k).norm() < 1e-13);
}

TEST_CASE("symmetric reservoirs at q = 1 give a flat profile") {
  const double al = 0.6, ga = 0.25;
  const MarkovGenerator g = build_generator(al, ga, ga, al, 1.0, 5);
  const StationaryDistribution sd = stationary_distribution(g);
  const OracleObservables o = oracle_observables(sd, g);
  for (double d : o.obs.density) CHECK(d == doctest::Approx(al / (al + ga)).epsilon(1e-12));
}

TEST_CASE("stationary solve quality and current conservation") {
  for (const ASEPRates& r : battery())
    for (int L = 1; L <= 10; ++L) {
      const MarkovGenerator g = build_generator(r, L);
      const StationaryDistribution sd = stationary_distribution(g);
      CHECK(sd.residual < 1e-12);
      CHECK(sd.probs.sum() == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(sd.probs.minCoeff() >= 0.0);
      const OracleObservables o = oracle_observables(sd, g);
      CHECK(std::abs(o.left_current - o.right_current) < 1e-10);
      CHECK(std::abs(o.left_current - o.obs.current) < 1e-10);
      for (double b : o.obs.bond_current) CHECK(std::abs(b - o.obs.current) < 1e-10);
    }
}

TEST_CASE("site operators follow the most-significant-bit convention") {
  Eigen::Matrix2cd n;
  n << 0, 0, 0, 1;
  const MatC N1 = site_op(n, 1, 3);
  CHECK(N1(4, 4) == cplx(1));
  CHECK(N1(1, 1) == cplx(0));
  const MatC N3 = site_op(n, 3, 3);
  CHECK(N3(1, 1) == cplx(1));
  CHECK(N3(4, 4) == cplx(0));
}

TEST_CASE("XXZ chain") {
  SUBCASE("bulk Hamiltonian is hermitian for real argument") {
    const MatC H = xxz_qgr(0.6, 4);
    CHECK((H - H.adjoint()).norm() < 1e-14);
  }

  SUBCASE("gauge identity holds only with the field sign flipped") {
    for (int L = 2; L <= 6; ++L) {
      CHECK(gauge_identity_residual(QParams(0.4), L, true) < 1e-12);
      CHECK(gauge_identity_residual(QParams(0.4), L, false) > 1e-3);
    }
  }

  SUBCASE("spectral map") {
    for (const ASEPRates& r : battery(3))
      for (int L = 2; L <= 6; ++L) {
        const MarkovGenerator g = build_generator(r, L);
        CHECK(spectrum_compare(g, build_xxz(r, L, 1.0, XXZForm::Audited)) < 1e-8);
        if (L == 3) CHECK(spectrum_compare(g, build_xxz(r, L, 1.0, XXZForm::Printed)) > 1e-3);
        const VecC e0 = balanced_eigenvalues(build_xxz(r, L, 1.0, XXZForm::Audited).H);
        for (double mu : {0.5, 2.0})
          CHECK(bottleneck_distance(e0, balanced_eigenvalues(build_xxz(r, L, mu, XXZForm::Audited).H)) < 1e-10);
      }
  }

  SUBCASE("decomposition is kept") {
    const ASEPRates r = battery(1)[0];
    const XXZModel m = build_xxz(r, 3, 1.5);
    CHECK((m.H - m.H_bulk - m.B1 - m.BL).norm() < 1e-14);
  }
}

TEST_CASE("bottleneck distance") {
  VecC a(3), b(3);
  a << 0.0, 1.0, cplx(2, 1);
  b << cplx(2, 1), 1.1, 0.0;
  CHECK(bottleneck_distance(a, b) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(bottleneck_distance(a, a.reverse().eval()) == 0.0);
  VecC c(2);
  c << 0.0, 1.0;
  CHECK_THROWS(bottleneck_distance(a, c));
}

TEST_CASE("balancing does not move eigenvalues") {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Random(12, 12);
  M.row(3) *= 1e4;
  M.col(3) /= 1e4;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
  CHECK(bottleneck_distance(balanced_eigenvalues(M), es.eigenvalues()) < 1e-8);
}
