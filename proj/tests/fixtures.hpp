#pragma once

// Desk-scale fixture matrices used across the test suites. Each is named by
// the property it exhibits. Entries carry at most four decimal digits; the
// *_lift fixtures are generated in full precision from their 2x2 projected
// systems instead.

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace fixtures {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Symmetric signed Laplacian, eigenvalues {0, 0, 4, 4}: marginally stable
// but with a two-dimensional kernel, so no consensus.
inline MatrixXd corank2_laplacian() {
  MatrixXd l(4, 4);
  l << 3, -1, -1, -1,
      -1, 1, 1, -1,
      -1, 1, 1, -1,
      -1, -1, -1, 3;
  return l;
}

// Marginally stable of corank 1, but the left kernel vector has mixed signs:
// dI - L gains the PF property while (dI - L)^T never does (d > 1.92).
inline MatrixXd right_pf_only_stable() {
  MatrixXd l(4, 4);
  l << -0.4, 0.7, 0, -0.3,
      -1.4, 1.6, 0.2, -0.4,
      -0.7, 0, 2.8, -2.1,
      0, 0, -1.3, 1.3;
  return l;
}

// Same right-PF-only structure but -L is unstable (eigenvalue +0.0890).
inline MatrixXd right_pf_only_unstable() {
  MatrixXd l(4, 4);
  l << 1.4, -1.9, 0.5, 0,
      0, 1, 0, -1,
      0.3, -0.2, 0.1, -0.2,
      -1.8, 0, 0, 1.8;
  return l;
}

// Digraph Laplacian whose negation is eventually exponentially positive;
// eigenvalues {0, 1.6956 +/- 0.9452i, 3.2089}, EP shift valid from ~1.61.
inline MatrixXd eep_digraph_laplacian() {
  MatrixXd l(4, 4);
  l << 1, -1, 0, 0,
      0, 2.6, -2.6, 0,
      -0.3, 0, 1.4, -1.1,
      -0.9, 0.2, -0.9, 1.6;
  return l;
}

// Weight balanced, -L EEP, yet the symmetric part is indefinite
// (min eigenvalue -0.0402): marginal stability without psd symmetric part.
inline MatrixXd wb_eep_indefinite_sym_part() {
  MatrixXd l(4, 4);
  l << 0.15, 0, 0, -0.15,
      -0.23, 0.15, 0.15, -0.07,
      0.01, -0.12, -0.03, 0.14,
      0.07, -0.03, -0.12, 0.08;
  return l;
}

// Same phenomenon with an all-positive diagonal. Also the first mode of the
// divergent continuous switching pair below.
inline MatrixXd wb_eep_indefinite_posdiag() {
  MatrixXd l(4, 4);
  l << 0.23, 0, -0.28, 0.05,
      -0.01, 0.03, 0.02, -0.04,
      0.05, -0.03, 0.04, -0.06,
      -0.27, 0, 0.22, 0.05;
  return l;
}

// Not normal, yet the symmetric part is psd of corank 1.
inline MatrixXd nonnormal_psd_sym_part() {
  MatrixXd l(4, 4);
  l << 1, 1, -1, -1,
      -1, 1, 0, 0,
      -1, -1, 2, 0,
      1, -1, -1, 1;
  return l;
}

// Row-sum-one gain with PF property but no left PF: consensus holds while
// eventual stochasticity fails. Eigenvalues {1, 0.148, -0.4603 +/- 0.3218i}.
inline MatrixXd pf_not_es_gain() {
  MatrixXd w(4, 4);
  w << 0.0893, 0.8036, -0.2679, 0.375,
      0.9932, 0.0068, 0, 0,
      0.8625, -0.0375, 0.1, 0.075,
      0.114, 0.8547, 0, 0.0313;
  return w;
}

// Row-sum-one gain with the PF property and spectral radius 1.6447: PF does
// not imply marginal Schur stability.
inline MatrixXd pf_unstable_gain() {
  MatrixXd w(4, 4);
  w << 0.0368, 0, 0.659, 0.3042,
      0, 0.0872, 3.1947, -2.2819,
      0, 0.9895, 0.0105, 0,
      0.9322, 0, 0, 0.0678;
  return w;
}

// Weight-balanced EEP pair whose alternating dwell-1 switch diverges from
// x0 = (-1, 2, -4, 7); the period map has spectral radius ~1.089.
inline std::vector<MatrixXd> divergent_ct_pair() {
  MatrixXd l2(4, 4);
  l2 << 0.96, -0.27, 0, -0.69,
      -0.44, 0.44, 0, 0,
      -0.43, -0.17, 0.07, 0.53,
      -0.09, 0, -0.07, 0.16;
  return {wb_eep_indefinite_posdiag(), l2};
}

// Doubly row-sum-one EP pair with rho(W2 W1) = 1.1008: alternating
// switching diverges although each mode reaches consensus alone.
inline std::vector<MatrixXd> divergent_dt_pair() {
  MatrixXd w1(4, 4), w2(4, 4);
  w1 << 0.79, 0, 0.25, -0.04,
      0.01, 0.97, -0.02, 0.04,
      -0.04, 0.03, 0.95, 0.06,
      0.24, 0, -0.18, 0.94;
  w2 << 0.42, 0.14, 0.02, 0.42,
      0.23, 0.68, 0, 0.09,
      0.28, 0.17, 0.92, -0.37,
      0.07, 0.01, 0.06, 0.86;
  return {w1, w2};
}

// Positive doubly stochastic rotation and its transpose; a consensus set
// although neither member is normal.
inline std::vector<MatrixXd> doubly_stochastic_pair() {
  MatrixXd w1(3, 3);
  w1 << 0.1, 0.2, 0.7,
      0.3, 0.5, 0.2,
      0.6, 0.3, 0.1;
  MatrixXd w2 = w1.transpose();
  return {w1, w2};
}

// Non-normal weight-balanced EEP pair admitting a quadratic common Lyapunov
// certificate; `quadratic_clf_matrix` is one known-good certificate for it.
inline std::vector<MatrixXd> quadratic_clf_pair() {
  MatrixXd l1(3, 3), l2(3, 3);
  l1 << 0.3388, -0.5673, 0.2285,
      0, 0.5673, -0.5673,
      -0.3388, 0, 0.3388;
  l2 << 0.3937, -0.6570, 0.2633,
      -0.1862, 0.6570, -0.4708,
      -0.2075, 0, 0.2075;
  return {l1, l2};
}

inline MatrixXd quadratic_clf_matrix() {
  MatrixXd p(3, 3);
  p << 72.7760, 18.9053, -6.5237,
      18.9053, 68.4564, -2.2041,
      -6.5237, -2.2041, 93.8854;
  return p;
}

// The classic planar switched pairs with no common quadratic Lyapunov
// function but an order-4 homogeneous one. Projected (2x2) systems:
inline std::pair<MatrixXd, MatrixXd> planar_noquad_ct_projected() {
  MatrixXd b1(2, 2), b2(2, 2);
  b1 << 1, 1, -1, 1;
  b2 << 1, 6, -1.0 / 6.0, 1;
  return {b1, b2};
}

inline std::pair<MatrixXd, MatrixXd> planar_noquad_dt_projected() {
  MatrixXd b1(2, 2), b2(2, 2);
  b1 << -0.2, -0.4, 0.4, -0.2;
  b2 << -0.2, -2.4, 1.0 / 15.0, -0.2;
  return {b1, b2};
}

// Four-decimal prints of three-agent realizations of the planar pairs
// (weight balanced / doubly row-sum-one only to ~1e-4).
inline std::vector<MatrixXd> planar_noquad_ct_printed() {
  MatrixXd l1(3, 3), l2(3, 3);
  l1 << 0.6667, 0.2440, -0.9107,
      -0.9107, 0.6667, 0.2440,
      0.2440, -0.9107, 0.6667;
  l2 << 2.6111, 0.4746, -3.0857,
      -3.0857, -0.3056, 3.3913,
      0.4746, -0.1691, -0.3056;
  return {l1, l2};
}

inline std::vector<MatrixXd> planar_noquad_dt_printed() {
  MatrixXd w1(3, 3), w2(3, 3);
  w1 << 0.2, 0.1691, 0.6309,
      0.6309, 0.2, 0.1691,
      0.1691, 0.6309, 0.2;
  w2 << -0.5778, 0.0768, 1.5010,
      1.5010, 0.5889, -1.0898,
      0.0768, 0.3343, 0.5889;
  return {w1, w2};
}

// Exact three-agent lifts of the planar pairs: L = Q^T B Q (continuous) and
// W = Q^T B Q + 11^T/3 (discrete) for the orthonormal Q with rows spanning
// the ones-complement. These project back onto the 2x2 systems bit-exactly.
MatrixXd lift_ct(const MatrixXd& projected, const MatrixXd& q);
MatrixXd lift_dt(const MatrixXd& projected, const MatrixXd& q);

inline MatrixXd lift_ct(const MatrixXd& projected, const MatrixXd& q) {
  return q.transpose() * projected * q;
}

inline MatrixXd lift_dt(const MatrixXd& projected, const MatrixXd& q) {
  const auto n = q.cols();
  return q.transpose() * projected * q +
         MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
}

inline VectorXd divergent_x0() {
  VectorXd x0(4);
  x0 << -1, 2, -4, 7;
  return x0;
}

}  // namespace fixtures
