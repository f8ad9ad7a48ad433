/**
 * @file unitarize.hpp
 * @brief Unitarization: the line construction, small systems, the functor
 * models of the discrete quadruples and the end-to-end quadruple pipeline.
 *
 * Every routine here returns a certificate on the caller's space. Models are
 * built elsewhere and pulled back along an isomorphism R : L -> model with
 * G = R* G_model R.
 */
#pragma once

#include "orthoscalar/coxeter.hpp"
#include "orthoscalar/knr.hpp"

namespace orthoscalar {

namespace detail {

inline OrthoscalarCertificate require_accepted(OrthoscalarCertificate cert, const ToleranceConfig& tol) {
  if (!cert.accepted(tol)) throw Error(ErrorCode::ResidualTooLarge, "orthoscalar residual " + std::to_string(cert.residual));
  return cert;
}

inline OrthoscalarCertificate pull_back(const SubspaceSystem& system, const SubspaceSystem& model, const GramMatrix& model_gram,
                                        const WeightVector& chi, std::uint64_t seed, const ToleranceConfig& tol) {
  const auto r = find_isomorphism(system, model, seed, tol);
  if (!r) throw Error(ErrorCode::NoIsomorphism, "system is not isomorphic to its model");
  const GramMatrix g = normalized_gram(r->adjoint() * model_gram.matrix() * *r, tol);
  return require_accepted(verify_orthoscalar(system, g, chi, tol), tol);
}

}  // namespace detail

/// A brick system of lines is orthoscalar for G = T^{-1}, T the sum of the
/// standard projections, with character (1; v_i* G v_i / v_i* v_i).
inline OrthoscalarCertificate unitarize_lines(const SubspaceSystem& system, const ToleranceConfig& tol = {}) {
  for (const auto& b : system.subspaces()) {
    if (b.cols() != 1) throw Error(ErrorCode::NotLines, "every subspace must be one-dimensional");
  }
  if (!is_brick(system, tol)) throw Error(ErrorCode::NotBrick, "line system is not a brick");
  const Index n = system.ambient_dim();
  Matrix t = Matrix::Zero(n, n);
  for (const auto& b : system.subspaces()) t += b * b.adjoint() / b.squaredNorm();
  if (inverse_condition(t) < tol.pd) throw Error(ErrorCode::SingularSum, "sum of projections is singular");
  const GramMatrix g(t.inverse(), tol);

  WeightVector chi{1.0, {}};
  for (const auto& b : system.subspaces()) {
    const Vector v = b.col(0);
    chi.tail.push_back((v.adjoint() * g.matrix() * v)(0, 0).real() / v.squaredNorm());
  }
  return detail::require_accepted(verify_orthoscalar(system, g, chi, tol), tol);
}

/// Systems covered by admissible_small: one-dimensional shapes take the
/// standard inner product; the line triple (2;1,1,1) is pulled back from
/// three lines whose weighted Bloch vectors close a triangle.
inline OrthoscalarCertificate unitarize_small(const SubspaceSystem& system, const WeightVector& chi,
                                              std::uint64_t seed = 0, const ToleranceConfig& tol = {}) {
  const DimensionVector shape = dimension_vector(system);
  if (!admissible_small(shape, chi).admissible) throw Error(ErrorCode::InadmissibleCharacter, "character " + to_string(chi));
  if (shape.head == 1) return detail::require_accepted(verify_orthoscalar(system, GramMatrix::identity(1), chi, tol), tol);
  if (!is_brick(system, tol)) throw Error(ErrorCode::NotBrick, "line triple is not a brick");
  const auto lines = detail::triangle_lines(chi.tail[0], chi.tail[1], chi.tail[2]);
  const SubspaceSystem model(2, {lines[0], lines[1], lines[2]});
  return detail::pull_back(system, model, GramMatrix::identity(2), chi, seed, tol);
}

/// Functor word W taking a one-dimensional base to a discrete brick
/// dimension: apply_word(W, base) == target. `position` is 0 for the D0 base
/// (C;0,0,0,0) and p for (C; C at position p, 0 elsewhere).
struct DiscreteChain {
  DimensionVector base;
  int position = 0;
  CoxeterWord word;
};

inline DiscreteChain discrete_chain(const DimensionVector& d) {
  if (!recognize_discrete(d)) throw Error(ErrorCode::NotDiscreteRoot, to_string(d) + " is not a discrete brick dimension");
  const auto valid = [](const DimensionVector& v) {
    if (v.head < 1) return false;
    return std::all_of(v.tail.begin(), v.tail.end(), [&](auto x) { return x >= 0 && x <= v.head; });
  };
  for (int position = 0; position <= 4; ++position) {
    DimensionVector base{1, {0, 0, 0, 0}};
    if (position > 0) base.tail[static_cast<std::size_t>(position - 1)] = 1;
    if (base == d) return DiscreteChain{base, position, {}};
    for (Letter first : {Letter::Bullet, Letter::Circle}) {
      CoxeterWord word;
      DimensionVector cur = base;
      Letter next = first;
      while (true) {
        cur = apply_letter(next, cur);
        word.push_back(next);
        if (!valid(cur) || cur.head > d.head) break;
        if (cur == d) return DiscreteChain{base, position, word};
        next = next == Letter::Circle ? Letter::Bullet : Letter::Circle;
      }
    }
  }
  throw Error(ErrorCode::NotDiscreteRoot, "no functor chain reaches " + to_string(d));
}

/// The orthoscalar model of the discrete brick dimension d with character
/// chi: chi is carried back along the chain to the base, where it must
/// satisfy a0 = 0 (D0) or a0 = a_p (D4); the base is unitarized by G = [1] and
/// pushed forward by the functors.
inline UnitarizedSystem build_discrete_model(const DimensionVector& d, const WeightVector& chi, const ToleranceConfig& tol = {}) {
  if (!admissible_discrete(d, chi).admissible) throw Error(ErrorCode::InadmissibleCharacter, "character " + to_string(chi) + " for " + to_string(d));
  const DiscreteChain chain = discrete_chain(d);
  WeightVector base_chi = apply_word(inverse_word(dual_word(chain.word)), chi);
  // Snap the base equality, which holds up to roundoff.
  base_chi.head = chain.position == 0 ? 0.0 : base_chi.tail[static_cast<std::size_t>(chain.position - 1)];
  std::vector<Matrix> subspaces(4, zero_subspace(1));
  if (chain.position > 0) subspaces[static_cast<std::size_t>(chain.position - 1)] = full_subspace(1);
  const auto base = UnitarizedSystem::certify(SubspaceSystem(1, std::move(subspaces), GramMatrix::identity(1)), base_chi, tol);
  const UnitarizedSystem model = apply_functor_word(base, chain.word, tol);
  return UnitarizedSystem::certify(model.system(), chi, tol);
}

/// Unitarizes a brick quadruple with an admissible character. Discrete
/// dimensions go through the functor model, (2;1,1,1,1) through the explicit
/// projection formulas or, when two lines coincide, the triangle model.
inline OrthoscalarCertificate unitarize_quadruple(const SubspaceSystem& system, const WeightVector& chi,
                                                  std::uint64_t seed = 0, const ToleranceConfig& tol = {}) {
  if (system.count() != 4) throw Error(ErrorCode::NotQuadruple, "expected four subspaces");
  detail::require_quadruple(chi);
  if (!is_brick(system, tol)) throw Error(ErrorCode::NotBrick, "quadruple is not a brick");
  const DimensionVector d = dimension_vector(system);

  if (!(d == imaginary_root())) {
    const UnitarizedSystem model = build_discrete_model(d, chi, tol);
    return detail::pull_back(system, model.system(), model.gram(), chi, seed, tol);
  }

  const auto pair = coincident_pair(system, tol);
  if (pair) {
    const auto cert = degenerate_gram(chi, pair->first, pair->second, tol);
    return detail::pull_back(system, degenerate_system(pair->first, pair->second), cert.gram, chi, seed, tol);
  }

  const auto mu = continuous_parameter(system, tol);
  if (!mu) throw Error(ErrorCode::NoIsomorphism, "degenerate configuration without a coincident pair");
  const KnrSolution sol = knr_solve(chi, *mu);
  const KnrParameters params = KnrParameters::make(KnrWeights::from_character(chi), sol.lambda, sol.x);
  return detail::pull_back(system, knr_system(params), GramMatrix::identity(2), chi, seed, tol);
}

}  // namespace orthoscalar
