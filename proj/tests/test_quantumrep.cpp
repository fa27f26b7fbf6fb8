#include "awq/awalgebra.hpp"
#include "awq/qspecial.hpp"
#include "awq/quantumrep.hpp"

#include <doctest.h>

#include <random>

using namespace awq;

namespace {

CoidealParams<cplx> random_cp(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-1, 1);
  return {cplx(u(gen), u(gen)), cplx(u(gen), u(gen)), cplx(u(gen), u(gen)),
          cplx(u(gen), u(gen)), cplx(u(gen), u(gen)), cplx(u(gen), u(gen))};
}

// q-integer written out as a geometric sum, independent of q_number.
double qint(int n, double q) {
  double s = 0;
  for (int k = 0; k < n; ++k) s += std::pow(q, 0.5 * (n - 1) - k);
  return s;
}

}  // namespace

TEST_CASE("spin representations satisfy the defining relations") {
  for (double qv : {0.25, 0.5, 0.9})
    for (int jt = 0; jt <= 6; ++jt) CHECK(spin_rep_residual(build_spin_rep<cplx>(jt, QParams(qv))) < 1e-12);
}

TEST_CASE("spin-1/2 raising operator") {
  const SpinRep<cplx> r = build_spin_rep<cplx>(1, QParams(0.5));
  Mat<cplx> expect = Mat<cplx>::Zero(2, 2);
  expect(0, 1) = 1.0;
  CHECK((r.Aplus - expect).norm() < 1e-15);
  CHECK(spin_rep_residual(r) == doctest::Approx(0.0));
}

TEST_CASE("classical limit of the matrix entries") {
  const QParams q(1 - 1e-8);
  for (int jt = 1; jt <= 4; ++jt) {
    const SpinRep<cplx> r = build_spin_rep<cplx>(jt, q);
    const double j = 0.5 * jt;
    for (int i = 1; i <= jt; ++i) {
      const double m = j - i;
      CHECK(std::abs(r.Aplus(i - 1, i) - std::sqrt((j - m) * (j + m + 1))) < 1e-3);
    }
  }
}

TEST_CASE("entries against hand-built q-integers") {
  const double qv = 0.3;
  const SpinRep<cplx> r = build_spin_rep<cplx>(3, QParams(qv));
  CHECK(std::abs(r.Aplus(0, 1) - std::sqrt(qint(3, qv) * qint(1, qv))) < 1e-13);
  CHECK(std::abs(r.Aplus(1, 2) - std::sqrt(qint(2, qv) * qint(2, qv))) < 1e-13);
  CHECK(std::abs(r.Aplus(2, 3) - std::sqrt(qint(1, qv) * qint(3, qv))) < 1e-13);
}

TEST_CASE("Casimir") {
  SUBCASE("spin-1/2 at q = 1/4") {
    const SpinRep<cplx> r = build_spin_rep<cplx>(1, QParams(0.25));
    CHECK(std::abs(casimir_value(r) - 4.25 / 2.25) < 1e-13);
  }

  SUBCASE("spin-1 against a 3x3 matrix computed by hand") {
    const double qv = 0.5, s = std::sqrt(qv) - 1 / std::sqrt(qv);
    const double a = std::sqrt(qint(2, qv));
    Eigen::Matrix3d Ap = Eigen::Matrix3d::Zero();
    Ap(0, 1) = a;
    Ap(1, 2) = a;
    Eigen::Matrix3d Q = Ap * Ap.transpose();
    for (int i = 0; i < 3; ++i) {
      const double m = 1 - i;
      Q(i, i) += (std::pow(qv, m - 0.5) + std::pow(qv, 0.5 - m)) / (s * s);
    }
    CHECK((Q - Q(0, 0) * Eigen::Matrix3d::Identity()).norm() < 1e-13);
    const SpinRep<cplx> r = build_spin_rep<cplx>(2, QParams(qv));
    CHECK(std::abs(casimir_value(r) - Q(0, 0)) < 1e-13);
  }

  SUBCASE("central on every spin up to 3") {
    for (int jt = 0; jt <= 6; ++jt) {
      const QParams q(0.6);
      const SpinRep<cplx> r = build_spin_rep<cplx>(jt, q);
      const Mat<cplx> C = casimir_matrix(r);
      CHECK(rel_comm(C, r.Aplus) < 1e-12);
      CHECK(rel_comm(C, r.Aminus) < 1e-12);
      CHECK(std::abs(casimir_value(r) - casimir_closed_form(jt, q)) < 1e-12 * casimir_closed_form(jt, q));
    }
  }

  SUBCASE("the sign-flipped form is not a scalar") {
    const SpinRep<cplx> r = build_spin_rep<cplx>(1, QParams(0.5));
    CHECK_THROWS_AS(casimir_value(r, CasimirForm::Printed), ConventionError);
    const Mat<cplx> P = casimir_matrix(r, CasimirForm::Printed);
    CHECK(std::abs(P(0, 0) - P(1, 1)) > 0.1);
  }

  SUBCASE("pole at q -> 1") {
    const double near = casimir_closed_form(1, QParams(0.999));
    const double nearer = casimir_closed_form(1, QParams(0.9999));
    CHECK(nearer > 50 * near);
  }
}

TEST_CASE("evaluation representations") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.3, 2.0);
  for (int jt = 0; jt <= 4; ++jt) {
    const QParams q(0.5);
    const cplx nu(u(gen), 0.5 * u(gen));
    const ChevalleyRep<cplx> ev = build_evaluation_rep(nu, build_spin_rep<cplx>(jt, q));
    CHECK(ev.level == 0);
    CHECK((ev.qH0() * ev.qH1() - identity<cplx>(ev.dim())).norm() < 1e-14);
    CHECK(chevalley_residual(ev) < 1e-12);
  }

  const ChevalleyRep<cplx> one = build_evaluation_rep(cplx(1), build_spin_rep<cplx>(1, QParams(0.5)));
  CHECK((one.E0p - one.E1m).norm() < 1e-15);
}

TEST_CASE("q-Serre relations") {
  const QParams q(0.5);
  const ChevalleyRep<cplx> r1 = build_evaluation_rep(cplx(0.7, 0.2), build_spin_rep<cplx>(1, q));
  CHECK(qserre_residual(r1) == doctest::Approx(0.0));
  const ChevalleyRep<cplx> r2 = build_evaluation_rep(cplx(1), build_spin_rep<cplx>(2, q));
  CHECK(qserre_residual(r2) < 1e-12);
  const ChevalleyRep<cplx> r3 = build_evaluation_rep(cplx(1.3, -0.4), build_spin_rep<cplx>(3, q));
  CHECK(qserre_residual(r3) < 1e-12);
  CHECK(qserre_residual(r3, SerreSign::Plus) > 1e-3);
}

TEST_CASE("tensor coproduct against explicit Kronecker products") {
  const QParams q(0.4);
  const ChevalleyRep<cplx> a = build_evaluation_rep(cplx(0.8), build_spin_rep<cplx>(2, q));
  const ChevalleyRep<cplx> b = build_evaluation_rep(cplx(1.1), build_spin_rep<cplx>(1, q));
  const ChevalleyRep<cplx> t = tensor_coproduct(a, b);
  const Mat<cplx> E = kron(a.E1p, b.qH1(-0.5)) + kron(a.qH1(0.5), b.E1p);
  CHECK((t.E1p - E).norm() < 1e-14);
  const Mat<cplx> F = kron(a.E0m, b.qH0(-0.5)) + kron(a.qH0(0.5), b.E0m);
  CHECK((t.E0m - F).norm() < 1e-14);
  CHECK(chevalley_residual(t) < 1e-12);
  CHECK(qserre_residual(t) < 1e-12);
}

TEST_CASE("coideal property of the coproduct") {
  const QParams q(0.5);
  auto ev = [&](int dim, cplx nu) { return build_evaluation_rep(nu, build_spin_rep<cplx>(dim - 1, q)); };

  SUBCASE("scalar part only") {
    CoidealParams<cplx> cp{0.0, 0.0, 0.0, 0.0, 1.0, 1.0};
    CHECK(coproduct_coideal_residual(ev(2, 1.0), ev(2, 1.0), cp) < 1e-15);
  }

  std::mt19937_64 gen(9);
  for (int s = 0; s < 5; ++s) {
    const CoidealParams<cplx> cp = random_cp(gen);
    CHECK(coproduct_coideal_residual(ev(2, 1.0), ev(2, 1.0), cp) < 1e-12);
    CHECK(coproduct_coideal_residual(ev(3, 0.7), ev(2, 1.2), cp) < 1e-12);
  }
}
