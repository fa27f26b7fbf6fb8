#ifndef AWQ_ORACLE_HPP
#define AWQ_ORACLE_HPP

#include "awq/asep.hpp"

#include <Eigen/Sparse>

namespace awq {

struct MarkovGenerator {
  int L;
  Eigen::SparseMatrix<double> matrix;
  double alpha, beta_r, gamma_r, delta_r, q_hop;
};

struct StationaryDistribution {
  int L;
  Eigen::VectorXd probs;  // indexed by configuration word, site 1 = most significant bit
  double residual;
};

struct OracleObservables {
  Observables obs;
  double left_current;
  double right_current;
};

// Printed: bulk H(q) with B_1, B_L as printed.
// Audited: bulk -(1/2q^{1/2}) sum(xx + yy + D'(zz - 1) + h'(z_{i+1} - z_i)) with D' = (q^{1/2}+q^{-1/2})/2,
//          h' = (q^{1/2}-q^{-1/2})/2, and q^{+-(L-1)/2} in B_L.
enum class XXZForm { Printed, Audited };

struct XXZModel {
  int L;
  MatC H, H_bulk, B1, BL;
  double Delta_q, h_field, mu;
  XXZForm form;
};

MarkovGenerator build_generator(const ASEPRates& rates, int L);
MarkovGenerator build_generator(double alpha, double beta_r, double gamma_r, double delta_r, double q_hop, int L);

StationaryDistribution stationary_distribution(const MarkovGenerator& g);

OracleObservables oracle_observables(const StationaryDistribution& sd, const MarkovGenerator& g);

// Occupation 1 = spin down = local index 1; site 1 = leftmost factor.
MatC site_op(const Eigen::Matrix2cd& op, int site, int L);

// -(1/2) sum (xx + yy + D zz + h(z_{i+1} - z_i) + D), D = -(x + 1/x)/2, h = (x - 1/x)/2
MatC xxz_qgr(double x, int L);

// diag of exp(i pi/2 sum_m m sigma^z_m)
VecC gauge_u(int L);

// || H(-1/q) + U H(q) U^{-1} || / || H(-1/q) ||, optionally with h -> -h in H(q).
double gauge_identity_residual(const QParams& q, int L, bool flip_h = false);

XXZModel build_xxz(const ASEPRates& rates, int L, double mu, XXZForm form = XXZForm::Printed);

// Eigenvalues after power-of-two diagonal balancing.
VecC balanced_eigenvalues(MatC M);

double bottleneck_distance(const VecC& a, const VecC& b);

double spectrum_compare(const MarkovGenerator& g, const XXZModel& m);

}  // namespace awq

#endif  // AWQ_ORACLE_HPP
