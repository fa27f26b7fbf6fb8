#ifndef AWQ_QSPECIAL_HPP
#define AWQ_QSPECIAL_HPP

#include "awq/core.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace awq {

template <class Scalar>
struct AWParams {
  Scalar a, b, c, d;
  QParams q;
  int guard;

  AWParams(Scalar a_, Scalar b_, Scalar c_, Scalar d_, QParams q_, int guard_ = 64);

  Scalar abcd() const { return a * b * c * d; }
};

// f[y] = c_0 + sum_k c_k (y^k + y^{-k})
template <class Scalar>
struct SymLaurentPoly {
  Vec<Scalar> coeffs;

  SymLaurentPoly() : coeffs(Vec<Scalar>::Zero(1)) {}
  explicit SymLaurentPoly(Vec<Scalar> c) : coeffs(std::move(c)) {}

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Scalar operator()(Scalar y) const;
  SymLaurentPoly times_x() const;
};

template <class Scalar>
struct InfiniteProduct {
  Scalar value;
  double remainder_bound;
  int terms;
};

template <class Scalar>
struct RecurrenceCoeffs {
  Scalar a_n, b_n, c_n;
};

template <class Scalar>
struct OrthogonalityResult {
  Scalar integral;
  Scalar h_n_ref;
};

struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

double q_number(double x, const QParams& q);

template <class Scalar>
Scalar q_pochhammer(Scalar z, const QParams& q, int n);

template <class Scalar>
InfiniteProduct<Scalar> q_pochhammer_inf(Scalar z, const QParams& q, double eps = 1e-16);

// Root y of y + 1/y = x with |y| >= 1.
template <class Scalar>
Scalar resolve_y(Scalar x);

template <class Scalar>
Scalar aw_poly_eval(int n, Scalar x, const AWParams<Scalar>& p);

template <class Scalar>
RecurrenceCoeffs<Scalar> recurrence_coeffs(int n, const AWParams<Scalar>& p);

// Diagonal coefficient in a form that stays finite at a = 0.
template <class Scalar>
Scalar diagonal_coeff(int n, const AWParams<Scalar>& p);

// x P_n = b_n P_{n+1} + a_n P_n + c_n P_{n-1} for P_n = a^{-n}(ab,ac,ad;q)_n p_n.
template <class Scalar>
RecurrenceCoeffs<Scalar> symmetric_recurrence_coeffs(int n, const AWParams<Scalar>& p);

template <class Scalar>
Scalar aw_poly_symmetric(int n, Scalar x, const AWParams<Scalar>& p);

template <class Scalar>
SymLaurentPoly<Scalar> aw_poly_laurent(int n, const AWParams<Scalar>& p);

template <class Scalar>
Scalar dual_eigenvalue(int n, const AWParams<Scalar>& p);

template <class Scalar>
Scalar apply_D_pointwise(const std::function<Scalar(Scalar)>& f, Scalar y, const AWParams<Scalar>& p);

template <class Scalar>
SymLaurentPoly<Scalar> apply_D(const SymLaurentPoly<Scalar>& f, const AWParams<Scalar>& p,
                               std::uint64_t seed = 0x5eedULL);

template <class Scalar>
Scalar norm_h(int n, const AWParams<Scalar>& p);

GaussLegendre gauss_legendre(int n);
GaussLegendre composite_gauss_legendre(double lo, double hi, int points, int panels = 20);

template <class Scalar>
OrthogonalityResult<Scalar> orthogonality_check(int m, int n, const AWParams<Scalar>& p,
                                                int quad_points = 2000);

}  // namespace awq

#endif  // AWQ_QSPECIAL_HPP
