#pragma once

#include <optional>

#include "slc/base.hpp"

namespace slc {

/// Full eigendecomposition with paired left/right eigenvectors.
///
/// Eigenvalues are sorted by descending real part, ties by descending
/// imaginary part. Eigenvectors have unit Euclidean norm and are phase
/// normalized: the first component of non-negligible magnitude is made
/// real and positive. Column i of left_vectors satisfies Mᵀw = λ_i w.
struct Spectrum {
  ComplexVector eigenvalues;
  ComplexMatrix right_vectors;
  ComplexMatrix left_vectors;
  double spectral_radius = 0.0;
  double dominance_gap = 0.0;  // rho minus the second-largest modulus

  Index size() const { return eigenvalues.size(); }
  /// Index of the eigenvalue closest to z.
  Index closest(Complex z) const;
  /// Index of the eigenvalue of largest modulus (ties: first in sort order).
  Index dominant() const;
};

Spectrum spectrum(const Eigen::Ref<const Matrix>& m, const Tolerances& tol = {});

/// e^{Mt} by scaling-and-squaring with a degree-13 Padé approximant.
/// Throws OverflowError if the result leaves the representable range.
Matrix matrix_exponential(const Eigen::Ref<const Matrix>& m, double t = 1.0);

template <typename DerivedA, typename DerivedB>
Matrix kron_product(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// A ⊕ B = A ⊗ I + I ⊗ B (square inputs only).
template <typename DerivedA, typename DerivedB>
Matrix kron_sum(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols()) throw NonSquareError();
  using MatA = typename DerivedA::PlainObject;
  using MatB = typename DerivedB::PlainObject;
  return kron_product(a, MatB::Identity(b.rows(), b.cols())) +
         kron_product(MatA::Identity(a.rows(), a.cols()), b);
}

struct RankReport {
  Index numerical_rank = 0;
  Index corank = 0;
  double zero_threshold = 0.0;  // absolute threshold actually applied
};

/// Numerical rank/corank from singular values, zero threshold tol_zero·‖M‖.
RankReport corank(const Eigen::Ref<const Matrix>& m, const Tolerances& tol = {});

/// Kernel dimension of the complex matrix (m - shift·I); used by the
/// semisimplicity tests.
Index corank_shifted(const Eigen::Ref<const Matrix>& m, Complex shift, const Tolerances& tol = {});

enum class Definiteness { PositiveDefinite, PositiveSemidefinite, Indefinite };

struct DefinitenessReport {
  Definiteness verdict = Definiteness::Indefinite;
  Index corank = 0;  // eigenvalues inside the zero band (0 for pd verdicts)
  Vector eigenvalues;  // ascending
  double min_eigenvalue = 0.0;
  double zero_threshold = 0.0;

  bool is_psd_of_corank(Index k) const {
    return (verdict == Definiteness::PositiveSemidefinite && corank == k) ||
           (verdict == Definiteness::PositiveDefinite && k == 0);
  }
};

/// Definiteness of a symmetric matrix (symmetry enforced within tol_sym·‖M‖).
DefinitenessReport definiteness(const Eigen::Ref<const Matrix>& msym, const Tolerances& tol = {});

}  // namespace slc
