/**
 * @file certificate.hpp
 * @brief Orthoscalarity certificates: a Gram matrix and a character together
 * with the measured residual ||sum a_k P_k - a_0 I||_F.
 */
#pragma once

#include "orthoscalar/systems.hpp"

namespace orthoscalar {

struct OrthoscalarCertificate {
  GramMatrix gram;
  WeightVector character;
  double residual = 0.0;

  bool accepted(const ToleranceConfig& tol = {}) const { return residual <= tol.residual; }
};

/// Measures the orthoscalar relation for L under G. Never rejects.
inline OrthoscalarCertificate verify_orthoscalar(const SubspaceSystem& system, const GramMatrix& gram,
                                                 const WeightVector& character, const ToleranceConfig& tol = {}) {
  if (gram.size() != system.ambient_dim()) throw Error(ErrorCode::ShapeMismatch, "Gram size differs from ambient dimension");
  if (character.tail.size() != system.count()) throw Error(ErrorCode::ShapeMismatch, "character length differs from subspace count");
  std::vector<Matrix> projections;
  projections.reserve(system.count());
  for (const auto& b : system.subspaces()) projections.push_back(g_projection(gram, b, tol));
  const double residual = residual_orthoscalar(std::span<const Matrix>(projections), character);
  return OrthoscalarCertificate{gram, character, residual};
}

/// Gram matrix rescaled so its largest eigenvalue is 1. Projections, and so
/// certificates, do not change under positive rescaling.
inline GramMatrix normalized_gram(const Matrix& g, const ToleranceConfig& tol = {}) {
  const Matrix h = (g + g.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues()(es.eigenvalues().size() - 1);
  if (!(top > 0)) throw Error(ErrorCode::InvalidArgument, "Gram matrix is not positive definite");
  return GramMatrix(h / top, tol);
}

}  // namespace orthoscalar
