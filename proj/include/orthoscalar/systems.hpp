/**
 * @file systems.hpp
 * @brief Systems of subspaces L = (V; V1, ..., Vn) and their linear-category
 * toolkit: Hom spaces, brick and indecomposability verdicts, isomorphisms,
 * direct sums and the operator quintuple of a pair of matrices.
 *
 * Subspaces are stored as basis matrices (ambient_dim x dim Vi). A zero
 * subspace is a basis with no columns. Subspace order is significant.
 */
#pragma once

#include "orthoscalar/numerics.hpp"
#include "orthoscalar/weights.hpp"

#include <optional>
#include <utility>

namespace orthoscalar {

class SubspaceSystem {
 public:
  SubspaceSystem(Index ambient_dim, std::vector<Matrix> subspaces, std::optional<GramMatrix> gram = std::nullopt,
                 const ToleranceConfig& tol = {})
      : ambient_dim_(ambient_dim), subspaces_(std::move(subspaces)), gram_(std::move(gram)) {
    if (ambient_dim_ < 0) throw Error(ErrorCode::InvalidSystem, "negative ambient dimension");
    if (subspaces_.empty()) throw Error(ErrorCode::InvalidSystem, "a system needs at least one subspace");
    for (std::size_t i = 0; i < subspaces_.size(); ++i) {
      Matrix& b = subspaces_[i];
      if (b.cols() == 0) {
        b.resize(ambient_dim_, 0);
        continue;
      }
      if (b.rows() != ambient_dim_) {
        throw Error(ErrorCode::InvalidSystem, "subspace " + std::to_string(i + 1) + " has vectors of wrong length");
      }
      if (!all_finite(b)) throw Error(ErrorCode::InvalidSystem, "subspace " + std::to_string(i + 1) + " is not finite");
      if (numerical_rank(b, tol) != b.cols()) {
        throw Error(ErrorCode::InvalidSystem, "subspace " + std::to_string(i + 1) + " has a dependent basis");
      }
    }
    if (gram_ && gram_->size() != ambient_dim_) {
      throw Error(ErrorCode::InvalidSystem, "Gram matrix size differs from ambient dimension");
    }
  }

  Index ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t count() const noexcept { return subspaces_.size(); }
  const Matrix& basis(std::size_t i) const { return subspaces_.at(i); }
  const std::vector<Matrix>& subspaces() const noexcept { return subspaces_; }
  const std::optional<GramMatrix>& gram() const noexcept { return gram_; }

  SubspaceSystem with_gram(GramMatrix g) const {
    return SubspaceSystem(ambient_dim_, subspaces_, std::move(g));
  }
  SubspaceSystem without_gram() const { return SubspaceSystem(ambient_dim_, subspaces_); }

  /// Projections onto each subspace, orthogonal under the stored Gram matrix
  /// (or the standard inner product when none is stored).
  std::vector<Matrix> projections(const ToleranceConfig& tol = {}) const {
    const GramMatrix g = gram_ ? *gram_ : GramMatrix::identity(ambient_dim_);
    std::vector<Matrix> out;
    out.reserve(subspaces_.size());
    for (const auto& b : subspaces_) out.push_back(g_projection(g, b, tol));
    return out;
  }

 private:
  Index ambient_dim_;
  std::vector<Matrix> subspaces_;
  std::optional<GramMatrix> gram_;
};

/// Basis matrix whose columns are the given vectors.
inline Matrix span_of(std::initializer_list<Vector> vectors) {
  if (vectors.size() == 0) return Matrix(0, 0);
  Matrix m(vectors.begin()->size(), static_cast<Index>(vectors.size()));
  Index j = 0;
  for (const auto& v : vectors) m.col(j++) = v;
  return m;
}

inline Vector vec(std::initializer_list<Complex> entries) {
  Vector v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (const auto& e : entries) v(i++) = e;
  return v;
}

/// Zero subspace of an n-dimensional ambient space.
inline Matrix zero_subspace(Index n) { return Matrix(n, 0); }
inline Matrix full_subspace(Index n) { return Matrix::Identity(n, n); }

inline DimensionVector dimension_vector(const SubspaceSystem& system) {
  DimensionVector d;
  d.head = system.ambient_dim();
  for (const auto& b : system.subspaces()) d.tail.push_back(b.cols());
  return d;
}

namespace detail {

// Standard-inner-product orthonormal basis of the complement of span(b) in C^n.
inline Matrix standard_complement(const Matrix& b, Index n, const ToleranceConfig& tol) {
  if (b.cols() == 0) return Matrix::Identity(n, n);
  return kernel_basis(b.adjoint(), tol);
}

}  // namespace detail

/// Basis of Hom(L, M) = {R : R(L_i) ⊆ M_i for all i}, as (dim M) x (dim L) matrices.
/// Constraints Q_i* R B_i = 0, Q_i an orthonormal basis of M_i's orthogonal
/// complement, are vectorized and solved with kernel_basis.
inline std::vector<Matrix> hom_space(const SubspaceSystem& from, const SubspaceSystem& to,
                                     const ToleranceConfig& tol = {}) {
  if (from.count() != to.count()) throw Error(ErrorCode::CountMismatch, "systems have different subspace counts");
  const Index n = from.ambient_dim();
  const Index m = to.ambient_dim();
  if (n == 0 || m == 0) return {};

  std::vector<std::pair<Matrix, Matrix>> blocks;  // (B_i, Q_i*)
  Index rows = 0;
  for (std::size_t i = 0; i < from.count(); ++i) {
    Matrix b = column_basis(from.basis(i), tol);
    Matrix q = detail::standard_complement(column_basis(to.basis(i), tol), m, tol);
    rows += b.cols() * q.cols();
    blocks.emplace_back(std::move(b), q.adjoint());
  }

  // vec(Q* R B) = (B^T ⊗ Q*) vec(R), column-major vec.
  Matrix constraints = Matrix::Zero(rows, m * n);
  Index row = 0;
  for (const auto& [b, qa] : blocks) {
    const Index k = qa.rows();
    for (Index c = 0; c < b.cols(); ++c) {
      for (Index j = 0; j < n; ++j) {
        constraints.block(row, j * m, k, m) = b(j, c) * qa;
      }
      row += k;
    }
  }

  const Matrix kernel = kernel_basis(constraints, tol);
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(kernel.cols()));
  for (Index c = 0; c < kernel.cols(); ++c) {
    out.push_back(Eigen::Map<const Matrix>(kernel.col(c).data(), m, n));
  }
  return out;
}

/// End(L) = C·I.
inline bool is_brick(const SubspaceSystem& system, const ToleranceConfig& tol = {}) {
  if (system.ambient_dim() < 1) throw Error(ErrorCode::InvalidSystem, "brick test needs a nonzero space");
  return hom_space(system, system, tol).size() == 1;
}

enum class Indecomposability { Decomposable, ProbablyIndecomposable };

inline const char* to_string(Indecomposability v) {
  return v == Indecomposability::Decomposable ? "Decomposable" : "ProbablyIndecomposable";
}

namespace detail {

inline Matrix random_combination(const std::vector<Matrix>& basis, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix x = Matrix::Zero(basis.front().rows(), basis.front().cols());
  for (const auto& e : basis) x += Complex(normal(rng), normal(rng)) * e;
  return x;
}

// True when X has at least two distinct eigenvalues. With N = X - tr(X)/n I,
// X has a single eigenvalue iff N is nilpotent iff tr(N^j) = 0 for j = 2..n.
inline bool has_several_eigenvalues(const Matrix& x, double tol_eig) {
  const Index n = x.rows();
  if (n < 2) return false;
  const Matrix nil = x - (x.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);
  const double scale = nil.norm();
  if (scale == 0.0) return false;
  const Matrix unit = nil / scale;
  Matrix power = unit;
  for (Index j = 2; j <= n; ++j) {
    power = power * unit;
    if (std::abs(power.trace()) > tol_eig * static_cast<double>(n)) return true;
  }
  return false;
}

}  // namespace detail

/// Randomized indecomposability test: a nontrivial idempotent exists iff a
/// generic endomorphism has more than one eigenvalue.
inline Indecomposability is_indecomposable(const SubspaceSystem& system, int trials = 16, std::uint64_t seed = 0,
                                           const ToleranceConfig& tol = {}) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
  const auto end = hom_space(system, system, tol);
  if (end.size() == 1) return Indecomposability::ProbablyIndecomposable;
  if (end.empty()) return Indecomposability::ProbablyIndecomposable;  // zero space
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    if (detail::has_several_eigenvalues(detail::random_combination(end, rng), tol.eig)) {
      return Indecomposability::Decomposable;
    }
  }
  return Indecomposability::ProbablyIndecomposable;
}

/// An invertible R in Hom(L, M); since dimensions agree, R(L_i) = M_i.
inline std::optional<Matrix> find_isomorphism(const SubspaceSystem& from, const SubspaceSystem& to,
                                              std::uint64_t seed = 0, const ToleranceConfig& tol = {}) {
  if (from.count() != to.count() || !(dimension_vector(from) == dimension_vector(to))) return std::nullopt;
  const Index n = from.ambient_dim();
  if (n == 0) return Matrix(0, 0);
  const auto hom = hom_space(from, to, tol);
  if (hom.empty()) return std::nullopt;

  constexpr double min_inverse_condition = 1e-8;
  constexpr int budget = 32;
  if (hom.size() == 1) {
    if (inverse_condition(hom.front()) > min_inverse_condition) return hom.front();
    return std::nullopt;
  }
  Rng rng(seed);
  for (int t = 0; t < budget; ++t) {
    Matrix r = detail::random_combination(hom, rng);
    if (inverse_condition(r) > min_inverse_condition) return r;
  }
  return std::nullopt;
}

inline SubspaceSystem direct_sum(const SubspaceSystem& a, const SubspaceSystem& b) {
  if (a.count() != b.count()) throw Error(ErrorCode::CountMismatch, "direct sum needs equal subspace counts");
  const Index na = a.ambient_dim();
  const Index nb = b.ambient_dim();
  std::vector<Matrix> subspaces;
  for (std::size_t i = 0; i < a.count(); ++i) {
    const Matrix& ba = a.basis(i);
    const Matrix& bb = b.basis(i);
    Matrix s = Matrix::Zero(na + nb, ba.cols() + bb.cols());
    s.topLeftCorner(na, ba.cols()) = ba;
    s.bottomRightCorner(nb, bb.cols()) = bb;
    subspaces.push_back(std::move(s));
  }
  return SubspaceSystem(na + nb, std::move(subspaces));
}

/// L_{A,B} = (E ⊕ E; (x,0), (0,x), (x,x), (x,Ax), (x,Bx)).
inline SubspaceSystem operator_quintuple(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "operator quintuple needs two square matrices of equal size");
  }
  const Index n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  const auto graph = [&](const Matrix& top, const Matrix& bottom) {
    Matrix g(2 * n, n);
    g << top, bottom;
    return g;
  };
  const Matrix zero = Matrix::Zero(n, n);
  return SubspaceSystem(2 * n, {graph(id, zero), graph(zero, id), graph(id, id), graph(id, a), graph(id, b)});
}

enum class ExtensionKind { AddZero, AddFull, DuplicateAt };

/// Appends 0, V, or a copy of V_k (1-based k) as a new last subspace.
inline SubspaceSystem extend_system(const SubspaceSystem& system, ExtensionKind kind, std::size_t k = 0) {
  std::vector<Matrix> subspaces = system.subspaces();
  const Index n = system.ambient_dim();
  switch (kind) {
    case ExtensionKind::AddZero: subspaces.push_back(zero_subspace(n)); break;
    case ExtensionKind::AddFull: subspaces.push_back(full_subspace(n)); break;
    case ExtensionKind::DuplicateAt:
      if (k < 1 || k > system.count()) throw Error(ErrorCode::IndexOutOfRange, "duplicate index out of range");
      subspaces.push_back(system.basis(k - 1));
      break;
  }
  return SubspaceSystem(n, std::move(subspaces));
}

}  // namespace orthoscalar
