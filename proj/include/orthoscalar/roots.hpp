/**
 * @file roots.hpp
 * @brief Quadruple dimension vectors: Tits form, deficiency, root classes,
 * the discrete dimension families and the continuous family S_mu.
 */
#pragma once

#include "orthoscalar/systems.hpp"

#include <array>
#include <numeric>

namespace orthoscalar {

namespace detail {

template <class T>
void require_quadruple(const BasicWeightVector<T>& w) {
  if (w.tail.size() != 4) throw Error(ErrorCode::NotQuadruple, "expected four tail entries, got " + std::to_string(w.tail.size()));
}

}  // namespace detail

/// T(d) = sum d_i^2 + d_0^2 - d_0 sum d_i.
inline std::int64_t tits_form(const DimensionVector& d) {
  detail::require_quadruple(d);
  std::int64_t squares = d.head * d.head;
  std::int64_t sum = 0;
  for (auto v : d.tail) {
    squares += v * v;
    sum += v;
  }
  return squares - d.head * sum;
}

/// def(w) = 2 w_0 - sum w_i.
template <class T>
T def_form(const BasicWeightVector<T>& w) {
  detail::require_quadruple(w);
  T out = w.head + w.head;
  for (const auto& v : w.tail) out -= v;
  return out;
}

enum class RootTag { RealRoot, ImaginaryRoot, NotRoot };

inline const char* to_string(RootTag tag) {
  switch (tag) {
    case RootTag::RealRoot: return "RealRoot";
    case RootTag::ImaginaryRoot: return "ImaginaryRoot";
    case RootTag::NotRoot: return "NotRoot";
  }
  return "NotRoot";
}

struct RootClass {
  RootTag tag = RootTag::NotRoot;
  std::int64_t tits_value = 0;
  bool minimal = false;  ///< imaginary root equal to (2;1,1,1,1)
};

inline const DimensionVector& imaginary_root() {
  static const DimensionVector sigma{2, {1, 1, 1, 1}};
  return sigma;
}

inline RootClass classify_root(const DimensionVector& d) {
  RootClass out;
  out.tits_value = tits_form(d);
  if (out.tits_value == 1) {
    out.tag = RootTag::RealRoot;
  } else if (out.tits_value == 0) {
    out.tag = RootTag::ImaginaryRoot;
    out.minimal = d == imaginary_root();
  }
  return out;
}

enum class FamilyKind { D4, D0 };

/// Labeled discrete family. For D4, `variant` (1..4) is the position of the
/// distinguished subspace; `size_param` and `label_sign` are the label's two
/// arguments as printed, e.g. D4(2m+1, -1) or D0(2m+1, -2).
struct DiscreteFamily {
  FamilyKind kind = FamilyKind::D4;
  int variant = 4;
  std::int64_t size_param = 1;
  int label_sign = -1;

  bool operator==(const DiscreteFamily&) const = default;
};

inline DimensionVector discrete_dimension(const DiscreteFamily& f) {
  const std::int64_t s = f.size_param;
  if (f.kind == FamilyKind::D4) {
    if (f.variant < 1 || f.variant > 4) throw Error(ErrorCode::InvalidLabel, "D4 variant must be 1..4");
    if (s < 1) throw Error(ErrorCode::InvalidLabel, "D4 size parameter must be at least 1");
    const std::int64_t m = s / 2;
    std::int64_t common = 0;
    std::int64_t distinguished = 0;
    if (s % 2 == 1 && f.label_sign == -1) {
      common = m, distinguished = m + 1;
    } else if (s % 2 == 1 && f.label_sign == 1) {
      common = m + 1, distinguished = m;
    } else if (s % 2 == 0 && f.label_sign == -1) {
      common = m, distinguished = m - 1;
    } else if (s % 2 == 0 && f.label_sign == 1) {
      common = m, distinguished = m + 1;
    } else {
      throw Error(ErrorCode::InvalidLabel, "D4 label sign must be -1 or 1");
    }
    DimensionVector d{s, {common, common, common, common}};
    d.tail[static_cast<std::size_t>(f.variant - 1)] = distinguished;
    return d;
  }
  if (f.label_sign == -2) {
    if (s < 1 || s % 2 == 0) throw Error(ErrorCode::InvalidLabel, "D0(size,-2) needs an odd size");
    const std::int64_t m = s / 2;
    return DimensionVector{s, {m, m, m, m}};
  }
  if (f.label_sign == 2) {
    // Printed as D0(2m, 2) = (2m+1; m+1, m+1, m+1, m+1).
    if (s < 0 || s % 2 == 1) throw Error(ErrorCode::InvalidLabel, "D0(size,2) needs an even size");
    const std::int64_t m = s / 2;
    return DimensionVector{2 * m + 1, {m + 1, m + 1, m + 1, m + 1}};
  }
  throw Error(ErrorCode::InvalidLabel, "D0 label sign must be -2 or 2");
}

/// Inverse of discrete_dimension on the family table.
inline std::optional<DiscreteFamily> recognize_discrete(const DimensionVector& d) {
  if (d.tail.size() != 4 || d.head < 1) return std::nullopt;
  for (auto v : d.tail)
    if (v < 0 || v > d.head) return std::nullopt;
  const std::int64_t h = d.head;
  const auto& t = d.tail;
  if (t[0] == t[1] && t[1] == t[2] && t[2] == t[3]) {
    if (h % 2 == 0) return std::nullopt;
    const std::int64_t m = h / 2;
    if (t[0] == m) return DiscreteFamily{FamilyKind::D0, 0, h, -2};
    if (t[0] == m + 1) return DiscreteFamily{FamilyKind::D0, 0, 2 * m, 2};
    return std::nullopt;
  }
  for (int p = 0; p < 4; ++p) {
    std::int64_t common = -1;
    bool ok = true;
    for (int i = 0; i < 4 && ok; ++i) {
      if (i == p) continue;
      if (common < 0) common = t[i];
      ok = t[i] == common;
    }
    if (!ok) continue;
    for (int sign : {-1, 1}) {
      const DiscreteFamily f{FamilyKind::D4, p + 1, h, sign};
      if (discrete_dimension(f) == d) return f;
    }
  }
  return std::nullopt;
}

/// S_mu = (<e1,e2>; <e1>, <e2>, <e1 + mu e2>, <e1 + e2>).
inline SubspaceSystem continuous_system(Complex mu) {
  if (mu == Complex(0.0) || mu == Complex(1.0)) {
    throw Error(ErrorCode::DegenerateParameter, "mu must differ from 0 and 1");
  }
  return SubspaceSystem(2, {span_of({vec({1, 0})}), span_of({vec({0, 1})}), span_of({vec({1, mu})}),
                            span_of({vec({1, 1})})});
}

/// S_{i,j}: subspaces i and j equal <e1+e2>, the other two <e1>, <e2> in order.
inline SubspaceSystem degenerate_system(int i, int j) {
  if (!(1 <= i && i < j && j <= 4)) throw Error(ErrorCode::InvalidIndices, "need 1 <= i < j <= 4");
  std::vector<Matrix> subspaces(4);
  const Matrix diag = span_of({vec({1, 1})});
  subspaces[static_cast<std::size_t>(i - 1)] = diag;
  subspaces[static_cast<std::size_t>(j - 1)] = diag;
  bool first = true;
  for (std::size_t k = 0; k < 4; ++k) {
    if (subspaces[k].size() != 0) continue;
    subspaces[k] = first ? span_of({vec({1, 0})}) : span_of({vec({0, 1})});
    first = false;
  }
  return SubspaceSystem(2, std::move(subspaces));
}

namespace detail {

inline Complex det2(const Vector& u, const Vector& v) { return u(0) * v(1) - u(1) * v(0); }

inline bool same_line(const Vector& u, const Vector& v, double tol) {
  return std::abs(det2(u, v)) <= tol * u.norm() * v.norm();
}

// Cross-ratio normal form: the invertible map sending l1 -> <e1>, l2 -> <e2>,
// l4 -> <e1+e2> sends l3 to <e1 + mu e2>.
inline Complex cross_ratio(const Vector& l1, const Vector& l2, const Vector& l3, const Vector& l4) {
  return det2(l1, l3) * det2(l4, l2) / (det2(l3, l2) * det2(l1, l4));
}

}  // namespace detail

/// The 1-based pair (i, j) of coinciding lines of a (2;1,1,1,1) quadruple, if any.
inline std::optional<std::pair<int, int>> coincident_pair(const SubspaceSystem& system, const ToleranceConfig& tol = {}) {
  if (!(dimension_vector(system) == imaginary_root())) {
    throw Error(ErrorCode::WrongDimension, "coincident pairs need dimension (2;1,1,1,1)");
  }
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (detail::same_line(system.basis(i).col(0), system.basis(j).col(0), tol.rank)) {
        return std::pair{static_cast<int>(i + 1), static_cast<int>(j + 1)};
      }
  return std::nullopt;
}

/// The parameter mu with L ≅ S_mu, or nullopt when V3 coincides with
/// V1, V2 or V4 (a degenerate quadruple).
inline std::optional<Complex> continuous_parameter(const SubspaceSystem& system, const ToleranceConfig& tol = {}) {
  if (!(dimension_vector(system) == imaginary_root())) {
    throw Error(ErrorCode::WrongDimension, "continuous parameter needs dimension (2;1,1,1,1)");
  }
  const Vector l1 = system.basis(0).col(0);
  const Vector l2 = system.basis(1).col(0);
  const Vector l3 = system.basis(2).col(0);
  const Vector l4 = system.basis(3).col(0);
  if (detail::same_line(l1, l2, tol.rank) || detail::same_line(l1, l4, tol.rank) ||
      detail::same_line(l2, l4, tol.rank)) {
    throw Error(ErrorCode::CoincidentAnchors, "subspaces 1, 2, 4 must be pairwise distinct");
  }
  if (detail::same_line(l3, l1, tol.rank) || detail::same_line(l3, l2, tol.rank) ||
      detail::same_line(l3, l4, tol.rank)) {
    return std::nullopt;
  }
  return detail::cross_ratio(l1, l2, l3, l4);
}

}  // namespace orthoscalar
