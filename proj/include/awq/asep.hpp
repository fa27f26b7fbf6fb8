#ifndef AWQ_ASEP_HPP
#define AWQ_ASEP_HPP

#include "awq/awalgebra.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace awq {

struct ASEPRates {
  double alpha, beta_r, gamma_r, delta_r;
  QParams q;
  double x0;

  ASEPRates(double alpha_, double beta_, double gamma_, double delta_, double q_);
};

template <class Scalar>
struct MPAState {
  Mat<Scalar> D0, D1;
  Vec<Scalar> w_vec, v_vec;
  AWParams<Scalar> params;
  ASEPRates rates;
  int N;
  double x0;
};

struct Observables {
  double Z_L = 0;
  std::vector<double> density;
  double current = 0;
  std::vector<double> bond_current;
  std::map<std::pair<int, int>, double> two_point;
};

struct MPAInvariants {
  double bulk, left, right;
  double max() const { return std::max({bulk, left, right}); }
};

struct JacobiCrosscheck {
  double diagonal;
  double offdiagonal;
};

struct ConventionCandidate {
  std::string label;
  MPAInvariants invariants;
};

enum class ChargeSide { Left, Right };
// Printed: left charge against H(q), right against H(-1/q) = -U H(q) U^{-1}.
// Audited: both charges against H(x) at x = -q^{1/2}.
enum class ChargePairing { Printed, Audited };

std::pair<cplx, cplx> kappa_pm(double u, double v, const QParams& q);

AWParams<cplx> kappa_map(const ASEPRates& rates);

double x0_from_boundary(const ASEPRates& rates);

template <class Scalar>
MPAState<Scalar> build_mpa(const ASEPRates& rates, int L, int N = -1);

template <class Scalar>
MPAInvariants mpa_invariants(const MPAState<Scalar>& mpa);

template <class Scalar>
JacobiCrosscheck mpa_jacobi_crosscheck(const MPAState<Scalar>& mpa);

std::vector<ConventionCandidate> mpa_convention_audit(const ASEPRates& rates, int N);

template <class Scalar>
double mpa_weight(const MPAState<Scalar>& mpa, unsigned long config, int L);

// Indexed by configuration word, site 1 = most significant bit.
template <class Scalar>
std::vector<double> mpa_distribution(const MPAState<Scalar>& mpa, int L);

template <class Scalar>
Observables observables(const MPAState<Scalar>& mpa, int L);

AWStructure<cplx> boundary_aw_constants(const ASEPRates& rates, cplx Q_val);
AWStructure<cplx> boundary_aw_constants_derived(const ASEPRates& rates, cplx Q_val);

template <class Scalar>
TridiagonalPair<Scalar> boundary_pair_finite(const ASEPRates& rates, const SpinRep<Scalar>& rep);

// L-site tensor representation of (A+, A-, N).
struct ChainGenerators {
  MatC Aplus, Aminus;
  Eigen::VectorXd N;
};

ChainGenerators chain_generators(int L, const QParams& q);

MatC boundary_charge(const ASEPRates& rates, const ChainGenerators& g, ChargeSide side);

double conserved_charge_residual(const ASEPRates& rates, int L, ChargeSide which,
                                 ChargePairing pairing = ChargePairing::Printed);

}  // namespace awq

#endif  // AWQ_ASEP_HPP
