#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace slc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Continuous-time (x' = -Lx) vs discrete-time (x+ = Wx) interpretation.
enum class Mode { Continuous, Discrete };

/// Tolerance profile. All thresholds are relative to the max-row-sum norm
/// of the matrix under test unless stated otherwise.
struct Tolerances {
  double tol_zero = 1e-8;   // rank / row-sum / normality zero threshold
  double tol_resid = 1e-8;  // eigenpair residual acceptance
  double tol_sym = 1e-10;   // symmetry deviation for symmetric-only routines
  double gap_min = 1e-7;    // margin deciding "simple" and "strictly dominant"
  double pos_min = 1e-7;    // strict-positivity cutoff on unit-norm eigenvectors
  int power_t_max = 200;    // budget for the direct matrix-power confirmation

  /// Profile widened for matrices entered at k decimal digits of precision
  /// (their spectral structure is only trustworthy to ~10^-k).
  static Tolerances decimals(int k) {
    Tolerances t;
    const double u = std::pow(10.0, -k) * 10.0;
    t.tol_zero = u;
    t.gap_min = u;
    return t;
  }
};

struct SlcError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonSquareError : SlcError {
  NonSquareError() : SlcError("matrix must be square") {}
  using SlcError::SlcError;
};
struct NumericalFailureError : SlcError {
  using SlcError::SlcError;
};
struct NotSymmetricError : SlcError {
  using SlcError::SlcError;
};
struct InvalidGraphError : SlcError {
  using SlcError::SlcError;
};
struct NotALaplacianError : SlcError {
  using SlcError::SlcError;
};
struct NotRowSumOneError : SlcError {
  using SlcError::SlcError;
};
struct SignatureAmbiguousError : SlcError {
  using SlcError::SlcError;
};
struct NoKernelError : SlcError {
  using SlcError::SlcError;
};
struct DimensionMismatchError : SlcError {
  using SlcError::SlcError;
};
struct DimensionCapError : SlcError {
  using SlcError::SlcError;
};
struct InvalidScenarioError : SlcError {
  using SlcError::SlcError;
};
struct InvalidInputError : SlcError {
  using SlcError::SlcError;
};
struct OverflowError : SlcError {
  using SlcError::SlcError;
};
struct InconsistentSignaturesError : SlcError {
  using SlcError::SlcError;
};
struct NecessaryTestFailedError : SlcError {
  using SlcError::SlcError;
};

/// Max-row-sum (infinity) norm; the reference scale for every relative threshold.
inline double inf_norm(const Eigen::Ref<const Matrix>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

inline void require_square(const Eigen::Ref<const Matrix>& m) {
  if (m.rows() != m.cols()) throw NonSquareError();
}

inline void require_finite(const Eigen::Ref<const Matrix>& m) {
  if (!m.allFinite()) throw InvalidInputError("matrix has non-finite entries");
}

}  // namespace slc
