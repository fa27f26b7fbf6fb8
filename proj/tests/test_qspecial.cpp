#include "awq/qspecial.hpp"

#include <doctest.h>

#include <boost/multiprecision/cpp_complex.hpp>

#include <random>

using namespace awq;

namespace {

const QParams q5(0.5);

AWParams<cplx> generic() { return AWParams<cplx>(0.3, 0.4, 0.5, 0.6, q5); }

AWParams<cplx> complex_params() {
  return AWParams<cplx>(cplx(0.3, 0.2), cplx(0.3, -0.2), cplx(-0.4, 0.1), cplx(-0.4, -0.1), QParams(0.6));
}

// Terminating 4phi3 summed term by term from explicit q-shifted factorials at 100 digits.
cplx series_oracle(int n, cplx x_, const AWParams<cplx>& p) {
  using C = boost::multiprecision::cpp_complex_100;
  auto lift = [](cplx z) { return C(z.real(), z.imag()); };
  const C q(p.q.q), one(1), x = lift(x_), a = lift(p.a), b = lift(p.b), c = lift(p.c), d = lift(p.d);
  const C y = (x + sqrt(x * x - C(4))) / C(2);
  auto qpow = [&](int k) {
    C r(1);
    for (int j = 0; j < std::abs(k); ++j) r *= q;
    return k < 0 ? one / r : r;
  };
  auto poch = [&](const C& z, int k) {
    C r(1);
    for (int j = 0; j < k; ++j) r *= one - z * qpow(j);
    return r;
  };
  const C e = a * b * c * d;
  C sum(0);
  for (int k = 0; k <= n; ++k)
    sum += poch(qpow(-n), k) * poch(e * qpow(n - 1), k) * poch(a * y, k) * poch(a / y, k) /
           (poch(a * b, k) * poch(a * c, k) * poch(a * d, k) * poch(q, k)) * qpow(k);
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

}  // namespace

TEST_CASE("q-number and q-shifted factorials") {
  CHECK(q_number(3, QParams(0.25)) == doctest::Approx(5.25).epsilon(1e-14));
  CHECK(q_number(1, q5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(q_number(0, q5) == doctest::Approx(0.0));
  CHECK(q_pochhammer(0.5, q5, 3) == doctest::Approx(0.5 * 0.75 * 0.875).epsilon(1e-15));
  CHECK(q_pochhammer(0.7, q5, 0) == 1.0);
  CHECK_THROWS_AS(q_pochhammer(0.7, q5, -1), DomainError);

  const InfiniteProduct<double> inf = q_pochhammer_inf(0.5, q5);
  double brute = 1;
  for (int k = 0; k < 200; ++k) brute *= 1 - 0.5 * std::pow(0.5, k);
  CHECK(inf.value == doctest::Approx(brute).epsilon(1e-15));
  CHECK(inf.remainder_bound < 1e-14);
}

TEST_CASE("resolve_y picks the outer root") {
  for (cplx x : {cplx(0.7, 0), cplx(-1.3, 0.2), cplx(3.1, -0.4)}) {
    const cplx y = resolve_y(x);
    CHECK(std::abs(y) >= 1.0 - 1e-14);
    CHECK(std::abs(y + 1.0 / y - x) < 1e-14);
  }
}

TEST_CASE("low degree polynomials") {
  const AWParams<cplx> p = generic();
  const auto r0 = recurrence_coeffs(0, p);
  for (cplx x : {cplx(0.4), cplx(-1.1, 0.3), cplx(2.5)}) {
    CHECK(std::abs(aw_poly_eval(0, x, p) - 1.0) < 1e-15);
    CHECK(std::abs(aw_poly_eval(1, x, p) - (x - r0.a_n) / r0.b_n) < 1e-13);
  }
}

TEST_CASE("series agrees with an independent term-by-term sum") {
  for (const AWParams<cplx>& p : {generic(), complex_params()})
    for (int n = 0; n <= 16; ++n)
      for (cplx x : {cplx(0.3), cplx(-1.7, 0.1), cplx(1.2, -0.6)}) {
        const cplx ref = series_oracle(n, x, p);
        CHECK(std::abs(aw_poly_eval(n, x, p) - ref) <= 1e-11 * std::max(1.0, std::abs(ref)));
      }
}

TEST_CASE("permutation symmetry in b, c, d") {
  const AWParams<cplx> p = generic();
  const AWParams<cplx> swapped(p.a, p.d, p.c, p.b, p.q);
  const AWParams<cplx> swapped_bc(p.a, p.c, p.b, p.d, p.q);
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-1.9, 1.9);
  for (int n = 0; n <= 5; ++n)
    for (int s = 0; s < 5; ++s) {
      const cplx x(u(gen), 0.3 * u(gen));
      const cplx v = aw_poly_eval(n, x, p);
      CHECK(std::abs(aw_poly_eval(n, x, swapped) - v) <= 1e-12 * std::max(1.0, std::abs(v)));
      CHECK(std::abs(aw_poly_eval(n, x, swapped_bc) - v) <= 1e-12 * std::max(1.0, std::abs(v)));
    }
}

TEST_CASE("recurrence coefficients") {
  const AWParams<cplx> p = generic();
  CHECK(recurrence_coeffs(0, p).c_n == cplx(0));
  for (int n = 0; n <= 20; ++n) {
    const auto rc = recurrence_coeffs(n, p);
    CHECK(std::abs(rc.a_n + rc.b_n + rc.c_n - (p.a + 1.0 / p.a)) < 1e-12);
    CHECK(std::abs(diagonal_coeff(n, p) - rc.a_n) < 1e-12 * std::max(1.0, std::abs(rc.a_n)));
  }

  SUBCASE("b = c = d = 0") {
    const double a = 0.7;
    const AWParams<cplx> z(a, 0.0, 0.0, 0.0, q5);
    const auto rc = recurrence_coeffs(1, z);
    CHECK(std::abs(rc.b_n - 1.0 / a) < 1e-15);
    CHECK(std::abs(rc.c_n - a * (1 - 0.5)) < 1e-15);
  }

  SUBCASE("a = 0 needs the regular diagonal form") {
    const AWParams<cplx> z(0.0, 0.4, 0.5, 0.6, q5);
    CHECK_THROWS_AS(recurrence_coeffs(1, z), DomainError);
    CHECK(std::isfinite(std::abs(diagonal_coeff(1, z))));
  }
}

TEST_CASE("three-term recurrence holds for n <= 20") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-1.95, 1.95);
  for (const AWParams<cplx>& p : {generic(), complex_params()}) {
    double worst = 0;
    for (int s = 0; s < 10; ++s) {
      const cplx x(u(gen), 0.1 * u(gen));
      for (int n = 0; n <= 20; ++n) {
        const auto rc = recurrence_coeffs(n, p);
        const cplx pn = aw_poly_eval(n, x, p), pn1 = aw_poly_eval(n + 1, x, p);
        const cplx pm = n > 0 ? aw_poly_eval(n - 1, x, p) : cplx(0);
        const cplx r = rc.b_n * pn1 + rc.a_n * pn + rc.c_n * pm - x * pn;
        const double sc = std::abs(rc.b_n * pn1) + std::abs(rc.a_n * pn) + std::abs(rc.c_n * pm) + std::abs(x * pn);
        worst = std::max(worst, std::abs(r) / sc);
      }
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("dual eigenvalues") {
  const AWParams<cplx> p = generic();
  CHECK(std::abs(dual_eigenvalue(0, p) - (1.0 + p.abcd() / 0.5)) < 1e-15);
  const AWParams<cplx> zero(0.3, 0.0, 0.5, 0.6, q5);
  for (int n = 0; n < 6; ++n) CHECK(std::abs(dual_eigenvalue(n, zero) - std::pow(0.5, -n)) < 1e-12);

  // a = b = c = d = q = 1/2 sits on abcd = q^4, so the guard is lowered to admit it
  const AWParams<cplx> half(0.5, 0.5, 0.5, 0.5, q5, 3);
  CHECK(std::abs(dual_eigenvalue(2, half) - (4.0 + 0.0625 * 0.5)) < 1e-14);
  CHECK_THROWS_AS(AWParams<cplx>(0.5, 0.5, 0.5, 0.5, q5), DomainError);

  for (int n = 0; n <= 64; ++n)
    for (int m = 0; m < n; ++m) CHECK(std::abs(dual_eigenvalue(n, p) - dual_eigenvalue(m, p)) > 1e-10);
}

TEST_CASE("the divided-difference operator") {
  const AWParams<cplx> p = generic();
  const SymLaurentPoly<cplx> one(VecC::Constant(1, cplx(1)));
  const SymLaurentPoly<cplx> D1 = apply_D(one, p);
  CHECK(std::abs(D1.coeffs(0) - (1.0 + p.abcd() / 0.5)) < 1e-12);
  CHECK(D1.coeffs.tail(D1.coeffs.size() - 1).norm() < 1e-12);

  for (const AWParams<cplx>& pp : {generic(), complex_params()})
    for (int n = 0; n <= 8; ++n) {
      const SymLaurentPoly<cplx> pn = aw_poly_laurent(n, pp);
      const SymLaurentPoly<cplx> Dp = apply_D(pn, pp);
      CHECK(Dp.degree() <= pn.degree());
      const double err = (Dp.coeffs - dual_eigenvalue(n, pp) * pn.coeffs).norm() / pn.coeffs.norm();
      CHECK(err < 1e-9);
    }

  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int deg = 0; deg <= 8; ++deg) {
    Vec<cplx> c(deg + 1);
    for (int k = 0; k <= deg; ++k) c(k) = cplx(u(gen), u(gen));
    CHECK(apply_D(SymLaurentPoly<cplx>(c), p).degree() <= deg);
  }
}

TEST_CASE("laurent expansion matches the series") {
  const AWParams<cplx> p = generic();
  for (int n = 0; n <= 6; ++n) {
    const SymLaurentPoly<cplx> pn = aw_poly_laurent(n, p);
    for (cplx y : {cplx(1.3, 0.2), std::polar(1.0, 0.7)}) {
      const cplx v = aw_poly_eval(n, y + 1.0 / y, p);
      CHECK(std::abs(pn(y) - v) <= 1e-11 * std::max(1.0, std::abs(v)));
    }
  }
}

TEST_CASE("orthogonality") {
  const AWParams<cplx> p = generic();
  const auto r01 = orthogonality_check(0, 1, p);
  const auto r00 = orthogonality_check(0, 0, p);
  CHECK(std::abs(r01.integral) < 1e-6 * std::abs(r00.h_n_ref));
  CHECK(std::abs(r00.integral - r00.h_n_ref) < 1e-6 * std::abs(r00.h_n_ref));

  SUBCASE("zero parameters, m = n = 2") {
    const AWParams<cplx> z(0.0, 0.0, 0.0, 0.0, q5);
    double inv = 1;
    for (int k = 3; k < 200; ++k) inv *= 1 - std::pow(0.5, k);
    const auto r = orthogonality_check(2, 2, z);
    CHECK(std::abs(r.h_n_ref - 1.0 / inv) < 1e-13);
    CHECK(std::abs(r.integral - 1.0 / inv) < 1e-6);
  }

  SUBCASE("m, n <= 5") {
    for (const AWParams<cplx>& pp : {generic(), complex_params()})
      for (int m = 0; m <= 5; ++m)
        for (int n = 0; n <= 5; ++n) {
          const auto r = orthogonality_check(m, n, pp);
          const cplx expect = m == n ? r.h_n_ref : cplx(0);
          CHECK(std::abs(r.integral - expect) < 1e-6 * std::abs(r.h_n_ref));
        }
  }

  SUBCASE("discrete masses are rejected") {
    const AWParams<cplx> big(1.5, 0.4, 0.5, 0.6, q5);
    CHECK_THROWS_AS(orthogonality_check(0, 0, big), UnsupportedRegime);
  }
}

TEST_CASE("parameter guard") {
  CHECK_THROWS_AS(AWParams<cplx>(1.0, 1.0, 1.0, 0.5, q5), DomainError);
  CHECK_THROWS_AS(AWParams<cplx>(1.0, 1.0, 1.0, 1.0, q5), DomainError);
  CHECK_NOTHROW(AWParams<cplx>(0.3, 0.4, 0.5, 0.6, q5));
  CHECK_THROWS_AS(QParams(1.0), DomainError);
  CHECK_THROWS_AS(QParams(0.0), DomainError);
}
