/**
 * @file knr.hpp
 * @brief Explicit solutions of a1 P1 + a2 P2 + a3 P3 + a4 P4 = I by rank-one
 * 2x2 projections, the map (lambda, x) -> mu to the continuous family, its
 * ellipse structure and inverse, and the degenerate triangle construction.
 *
 * Weights are normalized to sum 2 (so a0 = 1) and sorted ascending
 * internally; A = (a4-a1)/2, B = (a4+a1)/2, C = (a3-a2)/2, D = (a3+a2)/2 on the
 * sorted weights. Everything returned to callers (projections, mu) is in the
 * caller's original subspace order, except knr_ellipse, which works on the
 * sorted configuration.
 *
 * Phase convention: the upper-right entries of P2 and P3 carry e^{-ix}. With
 * this choice the images satisfy
 *   mu = 1/2 - AC/(2λ²) + sqrt((λ²-A²)(λ²-C²))/(4λ²) · (e^{-ix}/r + r e^{ix}),
 *   r = sqrt((B+λ)(D+λ)/((B-λ)(D-λ))).
 */
#pragma once

#include "orthoscalar/admissibility.hpp"
#include "orthoscalar/certificate.hpp"

#include <boost/math/tools/roots.hpp>

#include <numbers>

namespace orthoscalar {

class KnrWeights {
 public:
  /// From a quadruple character; only the tail is used (the head is implied
  /// by 2 a0 = sum a_i).
  static KnrWeights from_character(const WeightVector& chi) {
    detail::require_quadruple(chi);
    return from_tail({chi.tail[0], chi.tail[1], chi.tail[2], chi.tail[3]});
  }

  static KnrWeights from_tail(const std::array<double, 4>& tail) {
    double sum = 0;
    for (double v : tail) {
      if (!(v > 0) || !std::isfinite(v)) throw Error(ErrorCode::ParameterOutOfRange, "weights must be positive");
      sum += v;
    }
    KnrWeights w;
    std::array<double, 4> normalized{};
    for (std::size_t i = 0; i < 4; ++i) normalized[i] = 2.0 * tail[i] / sum;
    for (std::size_t i = 0; i < 4; ++i) w.order_[i] = i;
    std::stable_sort(w.order_.begin(), w.order_.end(), [&](std::size_t p, std::size_t q) { return normalized[p] < normalized[q]; });
    for (std::size_t k = 0; k < 4; ++k) w.sorted_[k] = normalized[w.order_[k]];
    for (double v : w.sorted_) {
      if (!(v < 1.0)) throw Error(ErrorCode::ParameterOutOfRange, "every weight must be below a0 = 1");
    }
    const auto& s = w.sorted_;
    w.A_ = (s[3] - s[0]) / 2;
    w.B_ = (s[3] + s[0]) / 2;
    w.C_ = (s[2] - s[1]) / 2;
    w.D_ = (s[2] + s[1]) / 2;
    return w;
  }

  const std::array<double, 4>& sorted() const noexcept { return sorted_; }
  /// sorted()[k] is the weight at original (0-based) position order()[k].
  const std::array<std::size_t, 4>& order() const noexcept { return order_; }
  double A() const noexcept { return A_; }
  double B() const noexcept { return B_; }
  double C() const noexcept { return C_; }
  double D() const noexcept { return D_; }
  double lambda_lower() const noexcept { return A_; }
  double lambda_upper() const noexcept { return std::min(B_, D_); }
  bool interior(double lambda) const noexcept { return lambda > A_ && lambda < lambda_upper() && lambda > 0; }

  /// Weights back in the caller's order, normalized to sum 2.
  std::array<double, 4> original() const {
    std::array<double, 4> out{};
    for (std::size_t k = 0; k < 4; ++k) out[order_[k]] = sorted_[k];
    return out;
  }

 private:
  std::array<double, 4> sorted_{};
  std::array<std::size_t, 4> order_{};
  double A_ = 0, B_ = 0, C_ = 0, D_ = 0;
};

struct KnrParameters {
  KnrWeights weights;
  double lambda = 0;
  double x = 0;  ///< radians, kept in [0, 2π)

  static KnrParameters make(const KnrWeights& w, double lambda, double x) {
    if (!std::isfinite(lambda) || !std::isfinite(x)) throw Error(ErrorCode::ParameterOutOfRange, "non-finite parameters");
    if (!w.interior(lambda)) {
      throw Error(ErrorCode::ParameterOutOfRange, "lambda must lie strictly between A and min(B, D)");
    }
    double wrapped = std::fmod(x, 2 * std::numbers::pi);
    if (wrapped < 0) wrapped += 2 * std::numbers::pi;
    return KnrParameters{w, lambda, wrapped};
  }
};

namespace detail {

// Products under the square roots, clamped to zero when roundoff pushes them
// slightly negative at the ends of the lambda interval.
inline double clamped_sqrt(double v) {
  constexpr double clamp = 1e-14;
  if (v < 0) {
    if (v < -clamp) throw Error(ErrorCode::ParameterOutOfRange, "negative radicand");
    return 0.0;
  }
  return std::sqrt(v);
}

// Lines of the S_mu normal form (e1, e2, e1 + mu e2, e1 + e2).
inline std::array<Vector, 4> normal_form_lines(Complex mu) {
  return {vec({1, 0}), vec({0, 1}), vec({1, mu}), vec({1, 1})};
}

// mu of the configuration whose position j holds line source[j] of the
// normal form with parameter mu.
inline Complex reorder_parameter(Complex mu, const std::array<std::size_t, 4>& source) {
  const auto lines = normal_form_lines(mu);
  return cross_ratio(lines[source[0]], lines[source[1]], lines[source[2]], lines[source[3]]);
}

inline Complex sorted_to_original(Complex mu, const KnrWeights& w) {
  std::array<std::size_t, 4> source{};
  for (std::size_t k = 0; k < 4; ++k) source[w.order()[k]] = k;
  return reorder_parameter(mu, source);
}

inline Complex original_to_sorted(Complex mu, const KnrWeights& w) { return reorder_parameter(mu, w.order()); }

inline Vector image_line(const Matrix& p) {
  Index best = 0;
  if (p.col(1).norm() > p.col(0).norm()) best = 1;
  return p.col(best).normalized();
}

inline std::array<Matrix, 4> sorted_projections(const KnrParameters& p) {
  const KnrWeights& w = p.weights;
  const double l = p.lambda, A = w.A(), B = w.B(), C = w.C(), D = w.D();
  const auto& a = w.sorted();
  const double s1 = clamped_sqrt((l * l - A * A) * (B * B - l * l));
  const double s2 = clamped_sqrt((l * l - C * C) * (D * D - l * l));
  const Complex up = std::polar(1.0, -p.x);
  const Complex down = std::conj(up);
  std::array<Matrix, 4> out;
  for (auto& m : out) m.resize(2, 2);
  out[0] << (l - A) * (l + B), s1, s1, -(l + A) * (l - B);
  out[1] << -(l - D) * (l + C), up * s2, down * s2, (l + D) * (l - C);
  out[2] << -(l - D) * (l - C), -up * s2, -down * s2, (l + D) * (l + C);
  out[3] << (l + A) * (l + B), -s1, -s1, -(l - A) * (l - B);
  for (std::size_t k = 0; k < 4; ++k) out[k] /= 2 * a[k] * l;
  return out;
}

}  // namespace detail

/// The four rank-one projections, in the caller's original order, with
/// sum a_i P_i = I for the normalized weights.
inline std::array<Matrix, 4> knr_projections(const KnrParameters& p) {
  const KnrParameters checked = KnrParameters::make(p.weights, p.lambda, p.x);
  const auto sorted = detail::sorted_projections(checked);
  std::array<Matrix, 4> out;
  for (std::size_t k = 0; k < 4; ++k) out[p.weights.order()[k]] = sorted[k];
  return out;
}

/// Images of knr_projections as a system with the standard inner product.
inline SubspaceSystem knr_system(const KnrParameters& p) {
  const auto proj = knr_projections(p);
  std::vector<Matrix> lines;
  for (const auto& m : proj) lines.push_back(detail::image_line(m));
  return SubspaceSystem(2, std::move(lines), GramMatrix::identity(2));
}

struct Ellipse {
  Complex center;
  double semi_real = 0;
  double semi_imag = 0;

  Complex at(double x) const { return center + Complex(semi_real * std::cos(x), semi_imag * std::sin(x)); }
};

/// For fixed lambda, x -> mu(lambda, x) of the sorted configuration traces
/// center + semi_real cos x + i semi_imag sin x.
inline Ellipse knr_ellipse(const KnrWeights& w, double lambda) {
  if (!w.interior(lambda)) throw Error(ErrorCode::ParameterOutOfRange, "lambda must lie strictly between A and min(B, D)");
  const double l2 = lambda * lambda, A = w.A(), B = w.B(), C = w.C(), D = w.D();
  const double s = detail::clamped_sqrt((l2 - A * A) * (l2 - C * C));
  const double r = std::sqrt((B + lambda) * (D + lambda) / ((B - lambda) * (D - lambda)));
  const double k = s / (4 * l2);
  return Ellipse{Complex(0.5 - A * C / (2 * l2), 0.0), k * (r + 1 / r), k * (r - 1 / r)};
}

/// mu with images(knr_projections(p)) ≅ S_mu, in the caller's order.
inline Complex knr_mu(const KnrParameters& p, const ToleranceConfig& tol = {}) {
  const auto proj = knr_projections(p);
  std::array<Vector, 4> lines;
  for (std::size_t k = 0; k < 4; ++k) lines[k] = detail::image_line(proj[k]);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (detail::same_line(lines[i], lines[j], tol.rank)) {
        throw Error(ErrorCode::DegenerateConfiguration, "image lines coincide");
      }
  const Complex sorted_mu = knr_ellipse(p.weights, p.lambda).at(p.x);
  return detail::sorted_to_original(sorted_mu, p.weights);
}

struct KnrSolution {
  double lambda = 0;
  double x = 0;
};

namespace detail {

inline double solve_angle(const Ellipse& e, Complex mu) {
  double x = std::atan2(mu.imag() / e.semi_imag, (mu.real() - e.center.real()) / e.semi_real);
  if (x < 0) x += 2 * std::numbers::pi;
  return x;
}

}  // namespace detail

/// (lambda, x) with |knr_mu - mu| < 1e-6, mu given in the caller's order.
/// Scans lambda from A outward for a sign change of
/// E(λ) = ((Re mu - c)/α)² + (Im mu/β)² - 1 and refines it by bracketing;
/// falls back to lambda -> A+ when mu sits at the contraction point.
inline KnrSolution knr_solve(const WeightVector& chi, Complex mu) {
  if (!admissible_continuous(chi).admissible) throw Error(ErrorCode::InadmissibleCharacter, "character " + to_string(chi));
  constexpr double forbidden = 1e-12;
  if (!std::isfinite(mu.real()) || !std::isfinite(mu.imag()) || std::abs(mu) < forbidden || std::abs(mu - 1.0) < forbidden) {
    throw Error(ErrorCode::ForbiddenMu, "mu must differ from 0 and 1");
  }
  constexpr double accept = 1e-6;
  const KnrWeights w = KnrWeights::from_character(chi);
  const Complex target = detail::original_to_sorted(mu, w);
  const double lo = w.lambda_lower();
  const double hi = w.lambda_upper();
  const double span = hi - lo;

  const auto error_of = [&](double lambda) {
    const Ellipse e = knr_ellipse(w, lambda);
    const double u = (target.real() - e.center.real()) / e.semi_real;
    const double v = target.imag() / e.semi_imag;
    return u * u + v * v - 1.0;
  };
  const auto attempt = [&](double lambda) -> std::optional<KnrSolution> {
    const Ellipse e = knr_ellipse(w, lambda);
    const KnrSolution sol{lambda, detail::solve_angle(e, target)};
    try {
      if (std::abs(knr_mu(KnrParameters::make(w, sol.lambda, sol.x)) - mu) < accept) return sol;
    } catch (const Error&) {
    }
    return std::nullopt;
  };

  // Grid in t = (λ - A)/(hi - A), dense near both ends.
  std::vector<double> grid;
  for (int e = -12; e < -2; ++e) grid.push_back(std::pow(10.0, e));
  for (int k = 1; k < 400; ++k) grid.push_back(k / 400.0);
  for (int e = -3; e >= -12; --e) grid.push_back(1.0 - std::pow(10.0, e));
  std::sort(grid.begin(), grid.end());
  if (lo == 0.0) {
    // λ > 0 is also required; t = 0 would be λ = 0.
    grid.erase(std::remove_if(grid.begin(), grid.end(), [](double t) { return t <= 0; }), grid.end());
  }

  double prev_t = grid.front();
  double prev_e = error_of(lo + span * prev_t);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double t = grid[k];
    const double cur_e = error_of(lo + span * t);
    if (std::isfinite(prev_e) && std::isfinite(cur_e) && ((prev_e > 0) != (cur_e > 0))) {
      const auto f = [&](double tt) { return error_of(lo + span * tt); };
      boost::uintmax_t iterations = 200;
      const auto bracket = boost::math::tools::toms748_solve(f, prev_t, t, prev_e, cur_e,
                                                             boost::math::tools::eps_tolerance<double>(52), iterations);
      for (double tt : {bracket.first, bracket.second, 0.5 * (bracket.first + bracket.second)}) {
        if (auto sol = attempt(lo + span * tt)) return *sol;
      }
    }
    prev_t = t;
    prev_e = cur_e;
  }

  for (int e = -1; e >= -14; --e) {
    if (auto sol = attempt(lo + span * std::pow(10.0, e))) return *sol;
  }
  throw Error(ErrorCode::SolverFailed, "no lambda found for mu");
}

namespace detail {

// Three real unit vectors spanning lines whose projections satisfy
// w1 P1 + w2 P2 + w3 P3 = (w1+w2+w3)/2 · I. The Bloch vectors n_k of the
// projections close the planar triangle w1 n1 + w2 n2 + w3 n3 = 0.
inline std::array<Vector, 3> triangle_lines(double w1, double w2, double w3) {
  const double cos12 = (w3 * w3 - w1 * w1 - w2 * w2) / (2 * w1 * w2);
  if (!(cos12 > -1.0 && cos12 < 1.0)) throw Error(ErrorCode::InadmissibleCharacter, "weights do not form a triangle");
  const double phi2 = std::acos(cos12);
  // n = (sin φ, cos φ) in the x-z plane; line (cos φ/2, sin φ/2).
  const double nx = -(w2 * std::sin(phi2)) / w3;
  const double nz = -(w1 + w2 * std::cos(phi2)) / w3;
  const double phi3 = std::atan2(nx, nz);
  const auto line = [](double phi) { return vec({std::cos(phi / 2), std::sin(phi / 2)}); };
  return {line(0.0), line(phi2), line(phi3)};
}

}  // namespace detail

/// Unitarizes the degenerate quadruple S_{i,j} (1-based i < j): the merged
/// subspace carries weight a_i + a_j and, with the other two weights, forms a
/// closed triangle of Bloch vectors. Returns the certificate on
/// degenerate_system(i, j).
inline OrthoscalarCertificate degenerate_gram(const WeightVector& chi, int i, int j, const ToleranceConfig& tol = {}) {
  const auto verdict = admissible_continuous(chi, std::pair{i, j});
  if (!verdict.admissible) throw Error(ErrorCode::InadmissibleCharacter, "character " + to_string(chi) + " for S_{i,j}");
  std::vector<std::size_t> rest;
  for (std::size_t q = 0; q < 4; ++q)
    if (static_cast<int>(q) != i - 1 && static_cast<int>(q) != j - 1) rest.push_back(q);
  const double merged = chi.tail[static_cast<std::size_t>(i - 1)] + chi.tail[static_cast<std::size_t>(j - 1)];
  const auto lines = detail::triangle_lines(chi.tail[rest[0]], chi.tail[rest[1]], merged);

  std::vector<Matrix> model(4);
  model[rest[0]] = lines[0];
  model[rest[1]] = lines[1];
  model[static_cast<std::size_t>(i - 1)] = lines[2];
  model[static_cast<std::size_t>(j - 1)] = lines[2];
  const SubspaceSystem target(2, std::move(model));
  const SubspaceSystem source = degenerate_system(i, j);
  const auto r = find_isomorphism(source, target, 0, tol);
  if (!r) throw Error(ErrorCode::NoIsomorphism, "S_{i,j} is not isomorphic to the triangle model");
  return verify_orthoscalar(source, normalized_gram(r->adjoint() * *r, tol), chi, tol);
}

}  // namespace orthoscalar
