/**
 * @file numerics.hpp
 * @brief Dense complex linear algebra used by every other module.
 *
 * Kernels and column spaces come from SVDs with a relative singular-value
 * cutoff. Projections are always recomputed from basis matrices and a Gram
 * matrix, so changing the inner product changes the projections with it.
 */
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace orthoscalar {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;
using Rng = std::mt19937_64;

enum class ErrorCode {
  InvalidArgument,
  ShapeMismatch,
  DependentBasis,
  InvalidSystem,
  CountMismatch,
  IndexOutOfRange,
  NotQuadruple,
  InvalidLabel,
  DegenerateParameter,
  InvalidIndices,
  WrongDimension,
  CoincidentAnchors,
  NonpositiveHead,
  Annihilated,
  NotSpanning,
  NonpositiveWeight,
  ResidualTooLarge,
  NotLines,
  NotBrick,
  SingularSum,
  UnknownShape,
  NotDiscreteRoot,
  InadmissibleCharacter,
  NoIsomorphism,
  SolverFailed,
  ParameterOutOfRange,
  DegenerateConfiguration,
  ForbiddenMu,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::DependentBasis: return "DependentBasis";
    case ErrorCode::InvalidSystem: return "InvalidSystem";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotQuadruple: return "NotQuadruple";
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::DegenerateParameter: return "DegenerateParameter";
    case ErrorCode::InvalidIndices: return "InvalidIndices";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::CoincidentAnchors: return "CoincidentAnchors";
    case ErrorCode::NonpositiveHead: return "NonpositiveHead";
    case ErrorCode::Annihilated: return "Annihilated";
    case ErrorCode::NotSpanning: return "NotSpanning";
    case ErrorCode::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::NotLines: return "NotLines";
    case ErrorCode::NotBrick: return "NotBrick";
    case ErrorCode::SingularSum: return "SingularSum";
    case ErrorCode::UnknownShape: return "UnknownShape";
    case ErrorCode::NotDiscreteRoot: return "NotDiscreteRoot";
    case ErrorCode::InadmissibleCharacter: return "InadmissibleCharacter";
    case ErrorCode::NoIsomorphism: return "NoIsomorphism";
    case ErrorCode::SolverFailed: return "SolverFailed";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::ForbiddenMu: return "ForbiddenMu";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Thresholds for every numerical decision in the library.
struct ToleranceConfig {
  double rank = 1e-9;       ///< relative singular-value cutoff
  double residual = 1e-8;   ///< accepted ||sum a_k P_k - a_0 I||_F
  double eig = 1e-7;        ///< eigenvalue clustering
  double pd = 1e-12;        ///< smallest admissible Gram eigenvalue (relative)
  double hermitian = 1e-10; ///< ||G - G*||_F bound

  void validate() const {
    if (!(rank > 0 && residual > 0 && eig > 0 && pd > 0 && hermitian > 0)) {
      throw Error(ErrorCode::InvalidArgument, "tolerances must be strictly positive");
    }
  }
};

inline bool all_finite(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

inline void require_finite(const Matrix& m, const char* what) {
  if (!all_finite(m)) throw Error(ErrorCode::InvalidArgument, std::string(what) + " has non-finite entries");
}

namespace detail {

inline Index rank_from_singular_values(const Eigen::VectorXd& s, double rel_tol) {
  if (s.size() == 0) return 0;
  const double cutoff = rel_tol * s(0);
  Index r = 0;
  while (r < s.size() && s(r) > cutoff) ++r;
  return r;
}

}  // namespace detail

/// Orthonormal basis (as columns) of the numerical null space of `m`.
inline Matrix kernel_basis(const Matrix& m, const ToleranceConfig& tol = {}) {
  const Index n = m.cols();
  if (n == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(n, n);
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const Index r = detail::rank_from_singular_values(svd.singularValues(), tol.rank);
  return svd.matrixV().rightCols(n - r);
}

/// Orthonormal basis (as columns) of the numerical column space of `m`.
inline Matrix column_basis(const Matrix& m, const ToleranceConfig& tol = {}) {
  if (m.cols() == 0 || m.rows() == 0) return Matrix(m.rows(), 0);
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const Index r = detail::rank_from_singular_values(svd.singularValues(), tol.rank);
  return svd.matrixU().leftCols(r);
}

inline Index numerical_rank(const Matrix& m, const ToleranceConfig& tol = {}) {
  if (m.cols() == 0 || m.rows() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(m);
  return detail::rank_from_singular_values(svd.singularValues(), tol.rank);
}

/// Ratio of smallest to largest singular value; 0 for a singular or empty matrix.
inline double inverse_condition(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  return s(0) > 0 ? s(s.size() - 1) / s(0) : 0.0;
}

/// Hermitian positive-definite matrix defining an inner product (x, y) = y* G x.
class GramMatrix {
 public:
  explicit GramMatrix(const Matrix& m, const ToleranceConfig& tol = {}) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::ShapeMismatch, "Gram matrix must be square");
    require_finite(m, "Gram matrix");
    if ((m - m.adjoint()).norm() > tol.hermitian) {
      throw Error(ErrorCode::InvalidArgument, "Gram matrix is not Hermitian");
    }
    m_ = (m + m.adjoint()) / 2.0;
    if (m_.rows() > 0) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
      const auto& ev = es.eigenvalues();
      if (!(ev(0) > tol.pd * std::max(1.0, ev(ev.size() - 1)))) {
        throw Error(ErrorCode::InvalidArgument, "Gram matrix is not positive definite");
      }
    }
  }

  static GramMatrix identity(Index n) { return GramMatrix(Matrix::Identity(n, n)); }

  const Matrix& matrix() const noexcept { return m_; }
  Index size() const noexcept { return m_.rows(); }

 private:
  Matrix m_;
};

/// Columns of the result are G-orthonormal and span the same space as `basis`.
inline Matrix g_orthonormal_basis(const GramMatrix& g, const Matrix& basis, const ToleranceConfig& tol = {}) {
  if (basis.cols() == 0) return basis;
  const Matrix inner = basis.adjoint() * g.matrix() * basis;
  Eigen::SelfAdjointEigenSolver<Matrix> es(inner);
  const auto& ev = es.eigenvalues();
  if (!(ev(0) > tol.rank * ev(ev.size() - 1))) {
    throw Error(ErrorCode::DependentBasis, "basis is linearly dependent under the Gram matrix");
  }
  return basis * es.operatorInverseSqrt();
}

/// G-orthogonal projection onto span(basis): P = B (B* G B)^{-1} B* G.
inline Matrix g_projection(const GramMatrix& g, const Matrix& basis, const ToleranceConfig& tol = {}) {
  const Index n = g.size();
  if (basis.rows() != n) throw Error(ErrorCode::ShapeMismatch, "basis length differs from Gram size");
  if (basis.cols() == 0) return Matrix::Zero(n, n);
  const Matrix inner = basis.adjoint() * g.matrix() * basis;
  Eigen::SelfAdjointEigenSolver<Matrix> es(inner);
  const auto& ev = es.eigenvalues();
  if (!(ev(0) > tol.rank * ev(ev.size() - 1))) {
    throw Error(ErrorCode::DependentBasis, "basis is linearly dependent under the Gram matrix");
  }
  const Matrix inv = es.eigenvectors() * ev.cwiseInverse().asDiagonal() * es.eigenvectors().adjoint();
  return basis * inv * basis.adjoint() * g.matrix();
}

/// Basis of the G-orthogonal complement of span(basis).
inline Matrix g_complement(const GramMatrix& g, const Matrix& basis, const ToleranceConfig& tol = {}) {
  const Index n = g.size();
  if (basis.cols() == 0) return Matrix::Identity(n, n);
  return kernel_basis(basis.adjoint() * g.matrix(), tol);
}

/// ||sum_k a_k P_k - a_0 I||_F
template <class Weights>
double residual_orthoscalar(std::span<const Matrix> projections, const Weights& character) {
  if (projections.size() != character.tail.size()) {
    throw Error(ErrorCode::ShapeMismatch, "character length differs from projection count");
  }
  if (projections.empty()) throw Error(ErrorCode::ShapeMismatch, "no projections");
  const Index n = projections.front().rows();
  Matrix sum = -static_cast<double>(character.head) * Matrix::Identity(n, n);
  for (std::size_t k = 0; k < projections.size(); ++k) {
    const Matrix& p = projections[k];
    if (p.rows() != n || p.cols() != n) throw Error(ErrorCode::ShapeMismatch, "projections differ in size");
    sum += static_cast<double>(character.tail[k]) * p;
  }
  return sum.norm();
}

// Random helpers. Every caller passes its own generator; nothing here is global.

inline Matrix random_matrix(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

inline Matrix random_unitary(Index n, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(n, n, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

/// Random matrix with condition number at most `max_condition`.
inline Matrix random_invertible(Index n, Rng& rng, double max_condition = 1e3) {
  for (;;) {
    Matrix m = random_matrix(n, n, rng);
    if (n == 0 || inverse_condition(m) > 1.0 / max_condition) return m;
  }
}

/// Traces tr(P_{i1} ... P_{ik}) over all index words of length 1..max_length,
/// in lexicographic order. Unitary-equivalence fingerprint of a projection tuple.
inline std::vector<Complex> word_trace_invariants(std::span<const Matrix> projections, int max_length) {
  std::vector<Complex> out;
  const std::size_t n = projections.size();
  if (n == 0) return out;
  std::vector<Matrix> layer(projections.begin(), projections.end());
  for (int len = 1; len <= max_length; ++len) {
    for (const auto& m : layer) out.push_back(m.trace());
    if (len == max_length) break;
    std::vector<Matrix> next;
    next.reserve(layer.size() * n);
    for (const auto& m : layer)
      for (const auto& p : projections) next.push_back(m * p);
    layer = std::move(next);
  }
  return out;
}

inline double max_abs_difference(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace orthoscalar
