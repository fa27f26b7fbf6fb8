#include "awq/quantumrep.hpp"
#include "awq/qspecial.hpp"

namespace awq {

namespace {

template <class Scalar>
double rel_to(const Mat<Scalar>& diff, double scale) {
  return diff.norm() / (scale > 0 ? scale : 1.0);
}

Eigen::VectorXd kron_sum(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j) out(i * b.size() + j) = a(i) + b(j);
  return out;
}

}  // namespace

template <class Scalar>
SpinRep<Scalar> build_spin_rep(int j_twice, const QParams& q) {
  if (j_twice < 0) throw DomainError("build_spin_rep: j_twice must be nonnegative");
  const int d = j_twice + 1;
  const double j = 0.5 * j_twice;
  SpinRep<Scalar> rep{d, j_twice, Mat<Scalar>::Zero(d, d), Mat<Scalar>::Zero(d, d),
                      Mat<Scalar>(), Mat<Scalar>(), Eigen::VectorXd(d), q};
  for (int i = 0; i < d; ++i) rep.m(i) = j - i;
  for (int i = 1; i < d; ++i) {
    const double mm = rep.m(i);
    rep.Aplus(i - 1, i) = Scalar(std::sqrt(q_number(j - mm, q) * q_number(j + mm + 1, q)));
  }
  rep.Aminus = rep.Aplus.transpose();
  rep.qN_pos = rep.qN(1.0);
  rep.qN_neg = rep.qN(-1.0);
  return rep;
}

template <class Scalar>
double spin_rep_residual(const SpinRep<Scalar>& rep) {
  const Mat<Scalar> N = rep.N();
  const double an = rep.Aplus.norm();
  double r = 0.0;
  r = std::max(r, rel_to<Scalar>(comm(N, rep.Aplus) - rep.Aplus, an));
  r = std::max(r, rel_to<Scalar>(comm(N, rep.Aminus) + rep.Aminus, an));
  const Mat<Scalar> rhs = (rep.qN_pos - rep.qN_neg) / Scalar(rep.q.s());
  r = std::max(r, rel_to<Scalar>(comm(rep.Aplus, rep.Aminus) - rhs, std::max(rhs.norm(), an * an)));
  r = std::max(r, rel_to<Scalar>(rep.qN_pos * rep.qN_neg - identity<Scalar>(rep.dim), 1.0));
  return r;
}

template <class Scalar>
Mat<Scalar> casimir_matrix(const SpinRep<Scalar>& rep, CasimirForm form) {
  const double s2 = rep.q.s() * rep.q.s();
  const Mat<Scalar> up = qdiag<Scalar>(Eigen::VectorXd(rep.m.array() - 0.5), rep.q, 1.0);
  const Mat<Scalar> dn = qdiag<Scalar>(Eigen::VectorXd(0.5 - rep.m.array()), rep.q, 1.0);
  if (form == CasimirForm::Central) return rep.Aplus * rep.Aminus + (up + dn) / Scalar(s2);
  return rep.Aplus * rep.Aminus - (up - dn) / Scalar(s2);
}

template <class Scalar>
Scalar casimir_value(const SpinRep<Scalar>& rep, CasimirForm form) {
  const Mat<Scalar> Q = casimir_matrix(rep, form);
  const Scalar val = Q(0, 0);
  const double dev = (Q - val * identity<Scalar>(rep.dim)).norm();
  if (dev > 1e-10 * std::max(1.0, std::abs(val)))
    throw ConventionError("casimir_value: Casimir matrix is not a multiple of the identity");
  return val;
}

double casimir_closed_form(int j_twice, const QParams& q) {
  return (q.pow(0.5 * (j_twice + 1)) + q.pow(-0.5 * (j_twice + 1))) / (q.s() * q.s());
}

template <class Scalar>
ChevalleyRep<Scalar> build_evaluation_rep(Scalar nu, const SpinRep<Scalar>& base) {
  ChevalleyRep<Scalar> r{nu * base.Aminus, base.Aplus / nu, base.Aplus, base.Aminus,
                         -base.m,          base.m,          0,          nu,
                         base.q};
  return r;
}

template <class Scalar>
double chevalley_residual(const ChevalleyRep<Scalar>& rep) {
  const QParams& q = rep.q;
  const Mat<Scalar>* Ep[2] = {&rep.E0p, &rep.E1p};
  const Mat<Scalar>* Em[2] = {&rep.E0m, &rep.E1m};
  const Eigen::VectorXd* H[2] = {&rep.H0, &rep.H1};
  double r = 0.0;
  for (int i = 0; i < 2; ++i) {
    const Mat<Scalar> qh = qdiag<Scalar>(*H[i], q, 1.0), qhi = qdiag<Scalar>(*H[i], q, -1.0);
    for (int j = 0; j < 2; ++j) {
      const double e = (i == j) ? 1.0 : -1.0;
      const double scale = std::max(Ep[j]->norm(), Em[j]->norm());
      r = std::max(r, rel_to<Scalar>(qh * *Ep[j] * qhi - Scalar(q.pow(e)) * *Ep[j], scale));
      r = std::max(r, rel_to<Scalar>(qh * *Em[j] * qhi - Scalar(q.pow(-e)) * *Em[j], scale));
      Mat<Scalar> rhs = Mat<Scalar>::Zero(rep.dim(), rep.dim());
      if (i == j) rhs = (qh - qhi) / Scalar(q.s());
      r = std::max(r, rel_to<Scalar>(comm(*Ep[i], *Em[j]) - rhs,
                                     std::max(rhs.norm(), Ep[i]->norm() * Em[j]->norm())));
    }
  }
  const Mat<Scalar> lvl = rep.qH0() * rep.qH1() - Scalar(q.pow(rep.level)) * identity<Scalar>(rep.dim());
  return std::max(r, rel_to<Scalar>(lvl, 1.0));
}

template <class Scalar>
double qserre_residual(const ChevalleyRep<Scalar>& rep, SerreSign sign) {
  const Scalar q3(q_number(3, rep.q));
  const Scalar last = sign == SerreSign::Minus ? Scalar(-1) : Scalar(1);
  const Mat<Scalar>* Ep[2] = {&rep.E0p, &rep.E1p};
  const Mat<Scalar>* Em[2] = {&rep.E0m, &rep.E1m};
  double r = 0.0;
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    for (const auto* E : {Ep, Em}) {
      const Mat<Scalar>& X = *E[i];
      const Mat<Scalar>& Y = *E[j];
      const double scale = std::pow(X.norm(), 3) * Y.norm();
      if (scale == 0.0) continue;
      const Mat<Scalar> X2 = X * X;
      const Mat<Scalar> X3 = X2 * X;
      const Mat<Scalar> S = X3 * Y - q3 * X2 * Y * X + q3 * X * Y * X2 + last * Y * X3;
      r = std::max(r, S.norm() / scale);
    }
  }
  return r;
}

template <class Scalar>
ChevalleyRep<Scalar> tensor_coproduct(const ChevalleyRep<Scalar>& r1, const ChevalleyRep<Scalar>& r2) {
  auto delta = [&](const Mat<Scalar>& E1, const Mat<Scalar>& E2, const Eigen::VectorXd& h1,
                   const Eigen::VectorXd& h2) -> Mat<Scalar> {
    return kron(E1, qdiag<Scalar>(h2, r1.q, -0.5)) + kron(qdiag<Scalar>(h1, r1.q, 0.5), E2);
  };
  ChevalleyRep<Scalar> out{delta(r1.E0p, r2.E0p, r1.H0, r2.H0),
                           delta(r1.E0m, r2.E0m, r1.H0, r2.H0),
                           delta(r1.E1p, r2.E1p, r1.H1, r2.H1),
                           delta(r1.E1m, r2.E1m, r1.H1, r2.H1),
                           kron_sum(r1.H0, r2.H0),
                           kron_sum(r1.H1, r2.H1),
                           r1.level + r2.level,
                           r1.nu,
                           r1.q};
  return out;
}

template struct SpinRep<cplx>;
template struct ChevalleyRep<cplx>;
template SpinRep<cplx> build_spin_rep<cplx>(int, const QParams&);
template double spin_rep_residual<cplx>(const SpinRep<cplx>&);
template MatC casimir_matrix<cplx>(const SpinRep<cplx>&, CasimirForm);
template cplx casimir_value<cplx>(const SpinRep<cplx>&, CasimirForm);
template ChevalleyRep<cplx> build_evaluation_rep<cplx>(cplx, const SpinRep<cplx>&);
template double chevalley_residual<cplx>(const ChevalleyRep<cplx>&);
template double qserre_residual<cplx>(const ChevalleyRep<cplx>&, SerreSign);
template ChevalleyRep<cplx> tensor_coproduct<cplx>(const ChevalleyRep<cplx>&, const ChevalleyRep<cplx>&);

}  // namespace awq
