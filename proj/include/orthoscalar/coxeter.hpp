/**
 * @file coxeter.hpp
 * @brief Coxeter maps on weight vectors and Coxeter functors on unitarized
 * systems.
 *
 * Words apply left to right: the first letter acts first. The pair word
 * (Bullet, Circle) sends (1;0,0,0,1) to (2;1,1,1,0), and its square to
 * (3;1,1,1,2).
 *
 * On systems, the Bullet functor replaces each subspace by its orthogonal
 * complement; it moves dimensions by c_bullet and characters by c_circle.
 * The Circle functor passes to the kernel of the weighted sum map
 * Γ(x_1..x_n) = Σ sqrt(a_i/a_0) x_i on ⊕H_i; it moves dimensions by c_circle
 * and characters by c_bullet.
 */
#pragma once

#include "orthoscalar/certificate.hpp"
#include "orthoscalar/roots.hpp"

#include <string_view>

namespace orthoscalar {

enum class Letter { Circle, Bullet };

using CoxeterWord = std::vector<Letter>;

/// (sum d_i - d_0; d_1, ..., d_n)
template <class T>
BasicWeightVector<T> c_circle(const BasicWeightVector<T>& w) {
  BasicWeightVector<T> out = w;
  T sum = T(0);
  for (const auto& v : w.tail) sum += v;
  out.head = sum - w.head;
  return out;
}

/// (d_0; d_0 - d_1, ..., d_0 - d_n)
template <class T>
BasicWeightVector<T> c_bullet(const BasicWeightVector<T>& w) {
  BasicWeightVector<T> out = w;
  for (auto& v : out.tail) v = w.head - v;
  return out;
}

template <class T>
BasicWeightVector<T> apply_letter(Letter letter, const BasicWeightVector<T>& w) {
  return letter == Letter::Circle ? c_circle(w) : c_bullet(w);
}

template <class T>
BasicWeightVector<T> apply_word(const CoxeterWord& word, BasicWeightVector<T> w) {
  for (Letter letter : word) w = apply_letter(letter, w);
  return w;
}

/// (Bullet, Circle) repeated `count` times.
inline CoxeterWord pair_power(std::int64_t count) {
  CoxeterWord out;
  for (std::int64_t k = 0; k < count; ++k) {
    out.push_back(Letter::Bullet);
    out.push_back(Letter::Circle);
  }
  return out;
}

/// Swaps Circle and Bullet. A functor word moving dimensions by `word` moves
/// characters by dual_word(word).
inline CoxeterWord dual_word(CoxeterWord word) {
  for (auto& l : word) l = l == Letter::Circle ? Letter::Bullet : Letter::Circle;
  return word;
}

/// Both maps are involutions, so the inverse is the reversed word.
inline CoxeterWord inverse_word(CoxeterWord word) {
  std::reverse(word.begin(), word.end());
  return word;
}

inline std::string to_string(const CoxeterWord& word) {
  std::string out;
  for (Letter l : word) out += l == Letter::Circle ? 'o' : 'b';
  return out;
}

/// The six composites with closed forms in terms of def(a).
enum class ClosedFormVariant {
  EvenPair,           ///< (ċc̊)^{2m}
  EvenPairThenBullet, ///< (ċc̊)^{2m} ċ
  OddPair,            ///< (ċc̊)^{2m+1}
  OddPairThenBullet,  ///< (ċc̊)^{2m+1} ċ
  CircleEvenPair,     ///< c̊ (ċc̊)^{2m}
  CircleOddPair,      ///< c̊ (ċc̊)^{2m+1}
};

inline constexpr std::array<ClosedFormVariant, 6> all_closed_form_variants{
    ClosedFormVariant::EvenPair,      ClosedFormVariant::EvenPairThenBullet, ClosedFormVariant::OddPair,
    ClosedFormVariant::OddPairThenBullet, ClosedFormVariant::CircleEvenPair, ClosedFormVariant::CircleOddPair};

inline CoxeterWord closed_form_word(ClosedFormVariant variant, std::int64_t m) {
  CoxeterWord word;
  switch (variant) {
    case ClosedFormVariant::EvenPair: return pair_power(2 * m);
    case ClosedFormVariant::EvenPairThenBullet:
      word = pair_power(2 * m);
      word.push_back(Letter::Bullet);
      return word;
    case ClosedFormVariant::OddPair: return pair_power(2 * m + 1);
    case ClosedFormVariant::OddPairThenBullet:
      word = pair_power(2 * m + 1);
      word.push_back(Letter::Bullet);
      return word;
    case ClosedFormVariant::CircleEvenPair:
      word = pair_power(2 * m);
      word.insert(word.begin(), Letter::Circle);
      return word;
    case ClosedFormVariant::CircleOddPair:
      word = pair_power(2 * m + 1);
      word.insert(word.begin(), Letter::Circle);
      return word;
  }
  return word;
}

template <class T>
BasicWeightVector<T> closed_form_iterate(ClosedFormVariant variant, std::int64_t m, const BasicWeightVector<T>& a) {
  if (m < 0) throw Error(ErrorCode::InvalidArgument, "iterate count must be nonnegative");
  const T def = def_form(a);
  const T mm(m);
  BasicWeightVector<T> out = a;
  switch (variant) {
    case ClosedFormVariant::EvenPair:
      out.head = T(2) * mm * def + a.head;
      for (std::size_t i = 0; i < 4; ++i) out.tail[i] = mm * def + a.tail[i];
      break;
    case ClosedFormVariant::EvenPairThenBullet:
      out.head = T(2) * mm * def + a.head;
      for (std::size_t i = 0; i < 4; ++i) out.tail[i] = mm * def + a.head - a.tail[i];
      break;
    case ClosedFormVariant::OddPair:
      out.head = (T(2) * mm + T(1)) * def + a.head;
      for (std::size_t i = 0; i < 4; ++i) out.tail[i] = mm * def + a.head - a.tail[i];
      break;
    case ClosedFormVariant::OddPairThenBullet:
      out.head = (T(2) * mm + T(1)) * def + a.head;
      for (std::size_t i = 0; i < 4; ++i) out.tail[i] = (mm + T(1)) * def + a.tail[i];
      break;
    case ClosedFormVariant::CircleEvenPair:
      out.head = a.head - (T(2) * mm + T(1)) * def;
      for (std::size_t i = 0; i < 4; ++i) out.tail[i] = a.tail[i] - mm * def;
      break;
    case ClosedFormVariant::CircleOddPair:
      out.head = a.head - (T(2) * mm + T(2)) * def;
      for (std::size_t i = 0; i < 4; ++i) out.tail[i] = a.head - a.tail[i] - (mm + T(1)) * def;
      break;
  }
  return out;
}

/// A system carrying a Gram matrix under which it is orthoscalar with `character`.
class UnitarizedSystem {
 public:
  /// Measures the certificate; throws ResidualTooLarge above tol.residual and
  /// NonpositiveWeight when a nonzero subspace carries a weight <= 0.
  static UnitarizedSystem certify(SubspaceSystem system, WeightVector character, const ToleranceConfig& tol = {}) {
    if (!system.gram()) throw Error(ErrorCode::InvalidArgument, "unitarized system needs a Gram matrix");
    if (character.tail.size() != system.count()) throw Error(ErrorCode::ShapeMismatch, "character length differs from subspace count");
    for (std::size_t i = 0; i < system.count(); ++i) {
      if (system.basis(i).cols() > 0 && !(character.tail[i] > 0)) {
        throw Error(ErrorCode::NonpositiveWeight, "nonzero subspace " + std::to_string(i + 1) + " has weight <= 0");
      }
    }
    const auto cert = verify_orthoscalar(system, *system.gram(), character, tol);
    if (!cert.accepted(tol)) {
      throw Error(ErrorCode::ResidualTooLarge, "orthoscalar residual " + std::to_string(cert.residual));
    }
    return UnitarizedSystem(std::move(system), std::move(character), cert.residual);
  }

  const SubspaceSystem& system() const noexcept { return system_; }
  const GramMatrix& gram() const { return *system_.gram(); }
  const WeightVector& character() const noexcept { return character_; }
  double residual() const noexcept { return residual_; }
  std::vector<Matrix> projections(const ToleranceConfig& tol = {}) const { return system_.projections(tol); }

 private:
  UnitarizedSystem(SubspaceSystem system, WeightVector character, double residual)
      : system_(std::move(system)), character_(std::move(character)), residual_(residual) {}

  SubspaceSystem system_;
  WeightVector character_;
  double residual_;
};

namespace detail {

inline double weight_scale(const WeightVector& w) {
  double s = std::abs(w.head);
  for (double v : w.tail) s = std::max(s, std::abs(v));
  return std::max(s, 1.0);
}

constexpr double positivity_guard = 1e-12;

}  // namespace detail

/// Orthogonal complements; character moves by c_circle.
inline UnitarizedSystem functor_bullet(const UnitarizedSystem& s, const ToleranceConfig& tol = {}) {
  const WeightVector next = c_circle(s.character());
  if (!(next.head > detail::positivity_guard * detail::weight_scale(s.character()))) {
    throw Error(ErrorCode::NonpositiveHead, "sum of weights minus head must be positive");
  }
  const auto& g = s.gram();
  std::vector<Matrix> complements;
  for (const auto& b : s.system().subspaces()) complements.push_back(g_complement(g, b, tol));
  return UnitarizedSystem::certify(SubspaceSystem(s.system().ambient_dim(), std::move(complements), g), next, tol);
}

/// Kernel of the weighted sum map; character moves by c_bullet. The new
/// ambient space carries the standard inner product.
inline UnitarizedSystem functor_circle(const UnitarizedSystem& s, const ToleranceConfig& tol = {}) {
  const WeightVector& chi = s.character();
  const SubspaceSystem& sys = s.system();
  const Index n = sys.ambient_dim();
  const double a0 = chi.head;
  const double guard = detail::positivity_guard * detail::weight_scale(chi);
  if (!(a0 > guard)) throw Error(ErrorCode::NonpositiveWeight, "head weight must be positive");

  Index total = 0;
  for (const auto& b : sys.subspaces()) total += b.cols();
  const Index k = total - n;
  if (k <= 0) throw Error(ErrorCode::Annihilated, "weighted sum map has zero kernel");
  for (std::size_t i = 0; i < sys.count(); ++i) {
    if (sys.basis(i).cols() > 0 && !(a0 - chi.tail[i] > guard)) {
      throw Error(ErrorCode::NonpositiveWeight, "weight of subspace " + std::to_string(i + 1) + " must be below the head");
    }
  }
  Matrix all(n, total);
  {
    Index off = 0;
    for (const auto& b : sys.subspaces()) {
      all.middleCols(off, b.cols()) = b;
      off += b.cols();
    }
  }
  if (numerical_rank(all, tol) != n) throw Error(ErrorCode::NotSpanning, "subspaces do not span the space");

  // y = L* x turns the G-inner product into the standard one.
  const Eigen::LLT<Matrix> llt(s.gram().matrix());
  const Matrix to_standard = llt.matrixL().adjoint();
  Matrix gamma(n, total);
  {
    Index off = 0;
    for (std::size_t i = 0; i < sys.count(); ++i) {
      const Matrix& b = sys.basis(i);
      if (b.cols() == 0) continue;
      const Matrix u = to_standard * g_orthonormal_basis(s.gram(), b, tol);
      gamma.middleCols(off, b.cols()) = std::sqrt(chi.tail[i] / a0) * u;
      off += b.cols();
    }
  }
  const Matrix kernel = kernel_basis(gamma, tol);
  if (kernel.cols() != k) throw Error(ErrorCode::NotSpanning, "weighted sum map is not surjective");

  std::vector<Matrix> next;
  Index off = 0;
  for (const auto& b : sys.subspaces()) {
    const Index d = b.cols();
    if (d == 0) {
      next.push_back(zero_subspace(k));
      continue;
    }
    Matrix image = column_basis(kernel.middleRows(off, d).adjoint(), tol);
    if (image.cols() != d) throw Error(ErrorCode::NonpositiveWeight, "kernel subspace lost dimension");
    next.push_back(std::move(image));
    off += d;
  }
  return UnitarizedSystem::certify(SubspaceSystem(k, std::move(next), GramMatrix::identity(k)), c_bullet(chi), tol);
}

/// F+ : Circle, then Bullet.
inline UnitarizedSystem functor_plus(const UnitarizedSystem& s, const ToleranceConfig& tol = {}) {
  return functor_bullet(functor_circle(s, tol), tol);
}

/// F- : Bullet, then Circle.
inline UnitarizedSystem functor_minus(const UnitarizedSystem& s, const ToleranceConfig& tol = {}) {
  return functor_circle(functor_bullet(s, tol), tol);
}

inline UnitarizedSystem apply_functor_word(UnitarizedSystem s, const CoxeterWord& word, const ToleranceConfig& tol = {}) {
  for (Letter l : word) s = l == Letter::Circle ? functor_circle(s, tol) : functor_bullet(s, tol);
  return s;
}

/// Parses a functor word over {o, b, +, -}; '+' is "o b" and '-' is "b o".
/// Whitespace is ignored.
inline CoxeterWord parse_functor_word(std::string_view text) {
  CoxeterWord word;
  for (char c : text) {
    switch (c) {
      case 'o': word.push_back(Letter::Circle); break;
      case 'b': word.push_back(Letter::Bullet); break;
      case '+': word.insert(word.end(), {Letter::Circle, Letter::Bullet}); break;
      case '-': word.insert(word.end(), {Letter::Bullet, Letter::Circle}); break;
      case ' ':
      case '\t':
      case ',': break;
      default: throw Error(ErrorCode::InvalidArgument, std::string("unknown functor letter '") + c + "'");
    }
  }
  return word;
}

}  // namespace orthoscalar
