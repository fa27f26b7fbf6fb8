#include "awq/qspecial.hpp"

#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>
#include <random>
#include <sstream>

namespace awq {

namespace {

constexpr double kDenomTol = 1e-14;

template <class Scalar>
void require_nonzero(Scalar v, const char* what) {
  if (std::abs(v) < kDenomTol) throw DomainError(std::string("vanishing factor: ") + what);
}

double uniform01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

}  // namespace

template <class Scalar>
AWParams<Scalar>::AWParams(Scalar a_, Scalar b_, Scalar c_, Scalar d_, QParams q_, int guard_)
    : a(a_), b(b_), c(c_), d(d_), q(q_), guard(guard_) {
  const Scalar e = abcd();
  for (int m = 0; m <= guard; ++m) {
    const double qm = q.pow(m);
    if (std::abs(e - Scalar(qm)) <= 1e-12 * qm) {
      std::ostringstream os;
      os << "abcd = q^" << m << " violates the parameter guard";
      throw DomainError(os.str());
    }
  }
}

template <class Scalar>
Scalar SymLaurentPoly<Scalar>::operator()(Scalar y) const {
  Scalar acc = coeffs(0);
  Scalar yk(1), yinv = Scalar(1) / y, yik(1);
  for (Eigen::Index k = 1; k < coeffs.size(); ++k) {
    yk *= y;
    yik *= yinv;
    acc += coeffs(k) * (yk + yik);
  }
  return acc;
}

template <class Scalar>
SymLaurentPoly<Scalar> SymLaurentPoly<Scalar>::times_x() const {
  const Eigen::Index K = coeffs.size() - 1;
  Vec<Scalar> out = Vec<Scalar>::Zero(K + 2);
  for (Eigen::Index k = 0; k <= K; ++k) {
    out(k + 1) += coeffs(k);
    if (k >= 2) out(k - 1) += coeffs(k);
  }
  if (K >= 1) out(0) += Scalar(2) * coeffs(1);
  return SymLaurentPoly(out);
}

double q_number(double x, const QParams& q) {
  return (q.pow(x / 2) - q.pow(-x / 2)) / q.s();
}

template <class Scalar>
Scalar q_pochhammer(Scalar z, const QParams& q, int n) {
  if (n < 0) throw DomainError("q_pochhammer: negative length");
  Scalar acc(1);
  double qk = 1.0;
  for (int k = 0; k < n; ++k) {
    acc *= Scalar(1) - z * qk;
    qk *= q.q;
  }
  return acc;
}

template <class Scalar>
InfiniteProduct<Scalar> q_pochhammer_inf(Scalar z, const QParams& q, double eps) {
  Scalar acc(1);
  double qk = 1.0;
  int k = 0;
  while (std::abs(z) * qk >= eps && k < 100000) {
    acc *= Scalar(1) - z * qk;
    qk *= q.q;
    ++k;
  }
  const double r = std::abs(z) * qk;
  const double bound = r / ((1.0 - q.q) * (1.0 - std::min(r, 0.5)));
  return {acc, bound * std::abs(acc), k};
}

template <class Scalar>
Scalar resolve_y(Scalar x) {
  Scalar y = (x + std::sqrt(x * x - Scalar(4))) / Scalar(2);
  if (std::abs(y) < 1.0) y = Scalar(1) / y;
  return y;
}

namespace {

template <class C>
struct SeriesValue {
  C sum;
  double magnitude;
};

// 4phi3 series at working type C; magnitude is the sum of |term|
template <class C>
SeriesValue<C> aw_series(int n, cplx x_, const AWParams<cplx>& p_) {
  using std::abs;
  using std::sqrt;
  auto lift = [](cplx z) { return C(z.real(), z.imag()); };
  const C one(1), a = lift(p_.a), b = lift(p_.b), c = lift(p_.c), d = lift(p_.d), x = lift(x_);
  const C q(p_.q.q);
  const C y = (x + sqrt(x * x - C(4))) / C(2);
  const C ab = a * b, ac = a * c, ad = a * d, e = ab * c * d;
  C qmn(1), qn1(1);
  for (int k = 0; k < n; ++k) qmn /= q;
  for (int k = 0; k + 1 < n; ++k) qn1 *= q;
  if (n == 0) qn1 = one / q;
  C term(1), sum(1), qk(1);
  double mag = 1.0;
  for (int k = 0; k < n; ++k, qk *= q) {
    const C num = (one - qmn * qk) * (one - e * qn1 * qk) * (one - a * y * qk) * (one - a / y * qk);
    const C den = (one - ab * qk) * (one - ac * qk) * (one - ad * qk) * (one - qk * q);
    term *= num / den * q;
    sum += term;
    mag += static_cast<double>(abs(term));
  }
  return {sum, mag};
}

template <class C>
cplx to_cplx(const C& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

// accept when the cancellation-amplified rounding stays below double resolution
template <class C>
bool settled(const SeriesValue<C>& v, double unit, double target) {
  if (!std::isfinite(v.magnitude)) return false;
  return v.magnitude * unit <= target * std::abs(to_cplx(v.sum));
}

}  // namespace

template <class Scalar>
Scalar aw_poly_eval(int n, Scalar x, const AWParams<Scalar>& p) {
  namespace mp = boost::multiprecision;
  if (n < 0) throw DomainError("aw_poly_eval: negative degree");
  const Scalar ab = p.a * p.b, ac = p.a * p.c, ad = p.a * p.d;
  double qj = 1.0;
  for (int j = 0; j < n; ++j, qj *= p.q.q) {
    require_nonzero(Scalar(1) - ab * qj, "1 - ab q^k");
    require_nonzero(Scalar(1) - ac * qj, "1 - ac q^k");
    require_nonzero(Scalar(1) - ad * qj, "1 - ad q^k");
  }
  const auto v0 = aw_series<cplx>(n, x, p);
  if (settled(v0, 1e-16, 1e-13)) return v0.sum;
  const auto v1 = aw_series<mp::cpp_complex<50>>(n, x, p);
  if (settled(v1, 1e-48, 1e-17)) return to_cplx(v1.sum);
  const auto v2 = aw_series<mp::cpp_complex<150>>(n, x, p);
  if (settled(v2, 1e-148, 1e-17)) return to_cplx(v2.sum);
  const auto v3 = aw_series<mp::cpp_complex<500>>(n, x, p);
  if (v3.magnitude * 1e-498 > 1e-8 * std::max(1.0, std::abs(to_cplx(v3.sum))))
    throw DomainError("aw_poly_eval: cancellation exceeds the available precision");
  return to_cplx(v3.sum);
}

template <class Scalar>
RecurrenceCoeffs<Scalar> recurrence_coeffs(int n, const AWParams<Scalar>& p) {
  if (n < 0) throw DomainError("recurrence_coeffs: negative index");
  require_nonzero(p.a, "a");
  const Scalar e = p.abcd();
  const double qn = p.q.pow(n), qn1 = p.q.pow(n - 1);
  const Scalar d1 = Scalar(1) - e * p.q.pow(2 * n - 2);
  const Scalar d2 = Scalar(1) - e * p.q.pow(2 * n - 1);
  const Scalar d3 = Scalar(1) - e * p.q.pow(2 * n);
  require_nonzero(d2, "1 - abcd q^{2n-1}");
  require_nonzero(d3, "1 - abcd q^{2n}");
  const Scalar b_n = (Scalar(1) - p.a * p.b * qn) * (Scalar(1) - p.a * p.c * qn) *
                     (Scalar(1) - p.a * p.d * qn) * (Scalar(1) - e * qn1) / (p.a * d2 * d3);
  Scalar c_n(0);
  if (n > 0) {
    require_nonzero(d1, "1 - abcd q^{2n-2}");
    c_n = p.a * (1.0 - qn) * (Scalar(1) - p.b * p.c * qn1) * (Scalar(1) - p.b * p.d * qn1) *
          (Scalar(1) - p.c * p.d * qn1) / (d1 * d2);
  }
  const Scalar a_n = p.a + Scalar(1) / p.a - b_n - c_n;
  return {a_n, b_n, c_n};
}

template <class Scalar>
Scalar diagonal_coeff(int n, const AWParams<Scalar>& p) {
  const double q = p.q.q, t = p.q.pow(n);
  const Scalar e1 = p.a + p.b + p.c + p.d;
  const Scalar e3 = p.a * p.b * p.c + p.a * p.b * p.d + p.a * p.c * p.d + p.b * p.c * p.d;
  const Scalar e4 = p.abcd();
  const Scalar num = -t * t * e4 * e3 - q * t * t * e4 * e1 + (1 + q) * t * e4 * e1 +
                     q * (1 + q) * t * e3 - q * e3 - q * q * e1;
  const Scalar den = (Scalar(q * q) - e4 * t * t) * (e4 * t * t - Scalar(1));
  require_nonzero(den, "(q^2 - abcd q^{2n})(abcd q^{2n} - 1)");
  return t * num / den;
}

template <class Scalar>
RecurrenceCoeffs<Scalar> symmetric_recurrence_coeffs(int n, const AWParams<Scalar>& p) {
  const Scalar e = p.abcd();
  const Scalar d1 = Scalar(1) - e * p.q.pow(2 * n - 2);
  const Scalar d2 = Scalar(1) - e * p.q.pow(2 * n - 1);
  const Scalar d3 = Scalar(1) - e * p.q.pow(2 * n);
  require_nonzero(d2, "1 - abcd q^{2n-1}");
  require_nonzero(d3, "1 - abcd q^{2n}");
  const Scalar B = (Scalar(1) - e * p.q.pow(n - 1)) / (d2 * d3);
  Scalar C(0);
  if (n > 0) {
    require_nonzero(d1, "1 - abcd q^{2n-2}");
    const double qn1 = p.q.pow(n - 1);
    C = (1.0 - p.q.pow(n)) * (Scalar(1) - p.b * p.c * qn1) * (Scalar(1) - p.b * p.d * qn1) *
        (Scalar(1) - p.c * p.d * qn1) * (Scalar(1) - p.a * p.b * qn1) *
        (Scalar(1) - p.a * p.c * qn1) * (Scalar(1) - p.a * p.d * qn1) / (d1 * d2);
  }
  return {diagonal_coeff(n, p), B, C};
}

template <class Scalar>
Scalar aw_poly_symmetric(int n, Scalar x, const AWParams<Scalar>& p) {
  Scalar prev(0), cur(1);
  for (int k = 0; k < n; ++k) {
    const auto rc = symmetric_recurrence_coeffs(k, p);
    const Scalar next = ((x - rc.a_n) * cur - rc.c_n * prev) / rc.b_n;
    prev = cur;
    cur = next;
  }
  return cur;
}

template <class Scalar>
SymLaurentPoly<Scalar> aw_poly_laurent(int n, const AWParams<Scalar>& p) {
  SymLaurentPoly<Scalar> prev, cur;
  prev.coeffs.setZero();
  cur.coeffs(0) = Scalar(1);
  for (int k = 0; k < n; ++k) {
    const auto rc = recurrence_coeffs(k, p);
    SymLaurentPoly<Scalar> next = cur.times_x();
    next.coeffs.head(cur.coeffs.size()) -= rc.a_n * cur.coeffs;
    next.coeffs.head(prev.coeffs.size()) -= rc.c_n * prev.coeffs;
    next.coeffs /= rc.b_n;
    prev = cur;
    cur = next;
  }
  return cur;
}

template <class Scalar>
Scalar dual_eigenvalue(int n, const AWParams<Scalar>& p) {
  return Scalar(p.q.pow(-n)) + p.abcd() * p.q.pow(n - 1);
}

template <class Scalar>
Scalar apply_D_pointwise(const std::function<Scalar(Scalar)>& f, Scalar y, const AWParams<Scalar>& p) {
  const double q = p.q.q;
  const Scalar one(1), y2 = y * y;
  const Scalar fy = f(y);
  const Scalar up = (one - p.a * y) * (one - p.b * y) * (one - p.c * y) * (one - p.d * y) /
                    ((one - y2) * (one - q * y2));
  const Scalar dn = (p.a - y) * (p.b - y) * (p.c - y) * (p.d - y) / ((one - y2) * (Scalar(q) - y2));
  return (one + p.abcd() / q) * fy + up * (f(q * y) - fy) + dn * (f(y / q) - fy);
}

template <class Scalar>
SymLaurentPoly<Scalar> apply_D(const SymLaurentPoly<Scalar>& f, const AWParams<Scalar>& p,
                               std::uint64_t seed) {
  const int K = f.degree();
  const int M = 2 * K + 3;
  std::function<Scalar(Scalar)> fn = [&f](Scalar y) { return f(y); };
  for (int attempt = 0; attempt <= 3; ++attempt) {
    std::mt19937_64 gen(seed + 0x9e3779b97f4a7c15ULL * attempt);
    Mat<Scalar> V(M, K + 1);
    Vec<Scalar> rhs(M);
    for (int j = 0; j < M; ++j) {
      const double phi = 0.05 + (3.14159265358979323846 - 0.1) * uniform01(gen);
      const Scalar y = std::polar(1.0, phi);
      V(j, 0) = Scalar(1);
      for (int k = 1; k <= K; ++k) V(j, k) = std::pow(y, k) + std::pow(y, -k);
      rhs(j) = apply_D_pointwise(fn, y, p);
    }
    Eigen::ColPivHouseholderQR<Mat<Scalar>> qr(V);
    if (qr.rank() < K + 1) continue;
    Vec<Scalar> c = qr.solve(rhs);
    const double res = (V * c - rhs).norm() / safe_scale(rhs.norm());
    if (res < 1e-10) return SymLaurentPoly<Scalar>(c);
  }
  throw DomainError("apply_D: interpolation failed after grid regeneration");
}

template <class Scalar>
Scalar norm_h(int n, const AWParams<Scalar>& p) {
  const Scalar e = p.abcd();
  const double qn = p.q.pow(n);
  Scalar num = q_pochhammer(e * p.q.pow(n - 1), p.q, n) * q_pochhammer_inf(e * p.q.pow(2 * n), p.q).value;
  Scalar den = q_pochhammer_inf(Scalar(p.q.pow(n + 1)), p.q).value;
  for (Scalar pr : {p.a * p.b, p.a * p.c, p.a * p.d, p.b * p.c, p.b * p.d, p.c * p.d})
    den *= q_pochhammer_inf(pr * qn, p.q).value;
  return num / den;
}

GaussLegendre gauss_legendre(int n) {
  GaussLegendre g;
  g.nodes.resize(n);
  g.weights.resize(n);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    g.nodes[i] = x;
    g.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return g;
}

GaussLegendre composite_gauss_legendre(double lo, double hi, int points, int panels) {
  const int per = std::max(1, points / panels);
  const GaussLegendre base = gauss_legendre(per);
  GaussLegendre out;
  const double h = (hi - lo) / panels;
  for (int k = 0; k < panels; ++k) {
    const double mid = lo + (k + 0.5) * h;
    for (int i = 0; i < per; ++i) {
      out.nodes.push_back(mid + 0.5 * h * base.nodes[i]);
      out.weights.push_back(0.5 * h * base.weights[i]);
    }
  }
  return out;
}

namespace {

template <class Scalar>
Scalar h_factor(double x, Scalar mu, const QParams& q) {
  Scalar acc(1);
  double qk = 1.0;
  for (int k = 0; k < 100000 && std::abs(mu) * qk >= 1e-17; ++k, qk *= q.q)
    acc *= Scalar(1) - Scalar(2) * mu * x * qk + mu * mu * qk * qk;
  return acc;
}

}  // namespace

template <class Scalar>
OrthogonalityResult<Scalar> orthogonality_check(int m, int n, const AWParams<Scalar>& p, int quad_points) {
  for (Scalar v : {p.a, p.b, p.c, p.d})
    if (std::abs(v) >= 1.0)
      throw UnsupportedRegime("orthogonality_check: parameter modulus >= 1 (discrete masses not supported)");
  const double pi = 3.14159265358979323846;
  const GaussLegendre g = composite_gauss_legendre(0.0, pi, quad_points);
  const Scalar sq(p.q.sqrt_q);
  Scalar acc(0);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const double x = std::cos(g.nodes[i]);
    const Scalar w = h_factor(x, Scalar(1), p.q) * h_factor(x, Scalar(-1), p.q) * h_factor(x, sq, p.q) *
                     h_factor(x, -sq, p.q) /
                     (h_factor(x, p.a, p.q) * h_factor(x, p.b, p.q) * h_factor(x, p.c, p.q) *
                      h_factor(x, p.d, p.q));
    const Scalar X(2 * x);
    acc += g.weights[i] * w / (2 * pi) * aw_poly_symmetric(m, X, p) * aw_poly_symmetric(n, X, p);
  }
  return {acc, norm_h(n, p)};
}

template struct AWParams<cplx>;
template struct SymLaurentPoly<cplx>;
template cplx q_pochhammer<cplx>(cplx, const QParams&, int);
template double q_pochhammer<double>(double, const QParams&, int);
template InfiniteProduct<cplx> q_pochhammer_inf<cplx>(cplx, const QParams&, double);
template InfiniteProduct<double> q_pochhammer_inf<double>(double, const QParams&, double);
template cplx resolve_y<cplx>(cplx);
template cplx aw_poly_eval<cplx>(int, cplx, const AWParams<cplx>&);
template RecurrenceCoeffs<cplx> recurrence_coeffs<cplx>(int, const AWParams<cplx>&);
template cplx diagonal_coeff<cplx>(int, const AWParams<cplx>&);
template RecurrenceCoeffs<cplx> symmetric_recurrence_coeffs<cplx>(int, const AWParams<cplx>&);
template cplx aw_poly_symmetric<cplx>(int, cplx, const AWParams<cplx>&);
template SymLaurentPoly<cplx> aw_poly_laurent<cplx>(int, const AWParams<cplx>&);
template cplx dual_eigenvalue<cplx>(int, const AWParams<cplx>&);
template cplx apply_D_pointwise<cplx>(const std::function<cplx(cplx)>&, cplx, const AWParams<cplx>&);
template SymLaurentPoly<cplx> apply_D<cplx>(const SymLaurentPoly<cplx>&, const AWParams<cplx>&, std::uint64_t);
template cplx norm_h<cplx>(int, const AWParams<cplx>&);
template OrthogonalityResult<cplx> orthogonality_check<cplx>(int, int, const AWParams<cplx>&, int);

}  // namespace awq
