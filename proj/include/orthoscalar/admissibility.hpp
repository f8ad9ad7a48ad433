/**
 * @file admissibility.hpp
 * @brief Which characters a given brick system can be unitarized with.
 *
 * All tests are templated on the scalar type: exact for rationals, absolute
 * tolerance 1e-12 on equalities for doubles (see ScalarTraits).
 */
#pragma once

#include "orthoscalar/roots.hpp"

#include <sstream>

namespace orthoscalar {

struct AdmissibilityVerdict {
  bool admissible = true;
  std::vector<std::string> failed_conditions;

  void require(bool holds, std::string label) {
    if (holds) return;
    admissible = false;
    failed_conditions.push_back(std::move(label));
  }
};

namespace detail {

template <class T>
bool positive(const T& v) { return ScalarTraits<T>::is_positive(v) && !ScalarTraits<T>::is_zero(v); }

template <class T>
bool zero(const T& v) { return ScalarTraits<T>::is_zero(v); }

inline std::string a(std::size_t i) { return "a" + std::to_string(i); }

// a0 >= 0 and every a_i > 0.
template <class T>
void require_character_axioms(AdmissibilityVerdict& v, const BasicWeightVector<T>& chi) {
  v.require(positive(chi.head) || zero(chi.head), "a0 >= 0");
  for (std::size_t i = 0; i < chi.tail.size(); ++i) v.require(positive(chi.tail[i]), a(i + 1) + " > 0");
}

template <class T>
T tail_sum(const BasicWeightVector<T>& w) {
  T s = T(0);
  for (const auto& v : w.tail) s += v;
  return s;
}

}  // namespace detail

/// Characters of the finitely many small systems: every (C; 0/C, ...) with
/// n = 2 or 3 subspaces, the brick line triple (2;1,1,1), and the
/// one-dimensional quadruples (C;0,0,0,0) and (C; ... C at one position ...).
/// The shape is identified by its dimension vector.
template <class T>
AdmissibilityVerdict admissible_small(const DimensionVector& shape, const BasicWeightVector<T>& chi) {
  const std::size_t n = shape.tail.size();
  if (chi.tail.size() != n) throw Error(ErrorCode::ShapeMismatch, "character length differs from shape");
  AdmissibilityVerdict v;
  const bool one_dim = shape.head == 1 && std::all_of(shape.tail.begin(), shape.tail.end(), [](auto d) { return d == 0 || d == 1; });
  const auto full_count = std::count(shape.tail.begin(), shape.tail.end(), 1);
  if (one_dim && (n == 2 || n == 3 || (n == 4 && full_count <= 1))) {
    detail::require_character_axioms(v, chi);
    T sum = T(0);
    std::string label = "a0 =";
    for (std::size_t i = 0; i < n; ++i) {
      if (shape.tail[i] == 1) {
        sum += chi.tail[i];
        label += " +" + detail::a(i + 1);
      }
    }
    if (full_count == 0) label = "a0 = 0";
    v.require(detail::zero(T(chi.head - sum)), label);
    return v;
  }
  if (shape == DimensionVector{2, {1, 1, 1}}) {
    v.require(detail::positive(chi.head), "a0 > 0");
    for (std::size_t i = 0; i < 3; ++i) {
      v.require(detail::positive(chi.tail[i]), detail::a(i + 1) + " > 0");
      v.require(detail::positive(T(chi.head - chi.tail[i])), detail::a(i + 1) + " < a0");
    }
    v.require(detail::zero(T(chi.head + chi.head - detail::tail_sum(chi))), "2a0 = a1+a2+a3");
    return v;
  }
  throw Error(ErrorCode::UnknownShape, "no character table for shape " + to_string(shape));
}

/// Character conditions for the discrete brick quadruples, indexed by the
/// family of the dimension vector. The distinguished index of a D4 family
/// takes the role of a4. Conditions also include the character axioms and
/// a_i < a0 on every nonzero proper subspace, which any orthoscalar system
/// satisfies.
template <class T>
AdmissibilityVerdict admissible_discrete(const DimensionVector& d, const BasicWeightVector<T>& chi) {
  const auto family = recognize_discrete(d);
  if (!family) throw Error(ErrorCode::NotDiscreteRoot, to_string(d) + " is not a discrete brick dimension");
  detail::require_quadruple(chi);
  AdmissibilityVerdict v;
  detail::require_character_axioms(v, chi);
  // On a nonzero proper subspace V_i, a0 |v|^2 = sum a_k (P_k v, v) > a_i |v|^2.
  for (std::size_t i = 0; i < 4; ++i) {
    if (d.tail[i] > 0 && d.tail[i] < d.head) v.require(detail::positive(T(chi.head - chi.tail[i])), detail::a(i + 1) + " < a0");
  }

  const T def = def_form(chi);
  const T& a0 = chi.head;
  const auto each = [&](auto&& expr, const std::string& text) {
    for (std::size_t i = 0; i < 4; ++i) v.require(detail::positive(T(expr(chi.tail[i]))), text + " with i=" + std::to_string(i + 1));
  };
  const auto mstr = [](std::int64_t m) { return std::to_string(m); };

  if (family->kind == FamilyKind::D4) {
    const std::size_t p = static_cast<std::size_t>(family->variant - 1);
    const T& ap = chi.tail[p];
    const std::string apn = detail::a(p + 1);
    const std::int64_t s = family->size_param;
    const std::int64_t m = s / 2;
    const T mm(m);
    if (s % 2 == 1 && family->label_sign == -1) {
      each([&](const T& ai) -> T { return mm * def + ai; }, mstr(m) + "*def+ai > 0");
      v.require(detail::zero(T(mm * def - (ap - a0))), mstr(m) + "*def = " + apn + "-a0");
    } else if (s % 2 == 1) {
      each([&](const T& ai) -> T { return ai - mm * def; }, "ai-" + mstr(m) + "*def > 0");
      v.require(detail::zero(T((mm + T(1)) * def + ap - a0)), mstr(m + 1) + "*def+" + apn + "-a0 = 0");
    } else if (family->label_sign == -1) {
      each([&](const T& ai) -> T { return (mm - T(1)) * def + a0 - ai; }, mstr(m - 1) + "*def+a0-ai > 0");
      v.require(detail::zero(T(mm * def + ap)), mstr(m) + "*def+" + apn + " = 0");
    } else {
      each([&](const T& ai) -> T { return a0 - ai - mm * def; }, "a0-ai-" + mstr(m) + "*def > 0");
      v.require(detail::zero(T(mm * def - ap)), mstr(m) + "*def = " + apn);
    }
    return v;
  }

  // D0: d = (2k+1; k,k,k,k) for sign -2 or (2k+1; k+1,k+1,k+1,k+1) for sign +2.
  const std::int64_t k = d.head / 2;
  const std::int64_t m = k / 2;
  const T mm(m);
  const bool odd = k % 2 == 1;
  if (family->label_sign == -2 && !odd) {
    each([&](const T& ai) -> T { return mm * def + ai; }, mstr(m) + "*def+ai > 0");
    v.require(detail::zero(T(T(2) * mm * def + a0)), mstr(2 * m) + "*def+a0 = 0");
  } else if (family->label_sign == 2 && !odd) {
    each([&](const T& ai) -> T { return ai - mm * def; }, "ai-" + mstr(m) + "*def > 0");
    v.require(detail::zero(T(a0 - (T(2) * mm + T(1)) * def)), "a0-" + mstr(2 * m + 1) + "*def = 0");
  } else if (family->label_sign == -2) {
    each([&](const T& ai) -> T { return mm * def + a0 - ai; }, mstr(m) + "*def+a0-ai > 0");
    v.require(detail::zero(T((T(2) * mm + T(1)) * def + a0)), mstr(2 * m + 1) + "*def+a0 = 0");
  } else {
    each([&](const T& ai) -> T { return a0 - ai - (mm + T(1)) * def; }, "a0-ai-" + mstr(m + 1) + "*def > 0");
    v.require(detail::zero(T(a0 - (T(2) * mm + T(2)) * def)), "a0-" + mstr(2 * m + 2) + "*def = 0");
  }
  return v;
}

/// Continuous quadruples of dimension (2;1,1,1,1). With `degenerate_pair`
/// (1-based i < j) the conditions are those of S_{i,j}, whose subspaces i
/// and j coincide; otherwise those of the nondegenerate S_mu.
template <class T>
AdmissibilityVerdict admissible_continuous(const BasicWeightVector<T>& chi,
                                           std::optional<std::pair<int, int>> degenerate_pair = std::nullopt) {
  detail::require_quadruple(chi);
  AdmissibilityVerdict v;
  const T sum = detail::tail_sum(chi);
  const T& a0 = chi.head;
  if (!degenerate_pair) {
    for (std::size_t i = 0; i < 4; ++i) {
      const T& ai = chi.tail[i];
      v.require(detail::positive(T(sum - ai - ai)), "2" + detail::a(i + 1) + " < a1+a2+a3+a4");
      v.require(detail::positive(ai), detail::a(i + 1) + " > 0");
      v.require(detail::positive(T(a0 - ai)), detail::a(i + 1) + " < a0");
    }
    v.require(detail::zero(T(a0 + a0 - sum)), "2a0 = a1+a2+a3+a4");
    return v;
  }
  const auto [i, j] = *degenerate_pair;
  if (!(1 <= i && i < j && j <= 4)) throw Error(ErrorCode::InvalidIndices, "need 1 <= i < j <= 4");
  std::vector<std::size_t> rest;
  for (std::size_t q = 1; q <= 4; ++q)
    if (static_cast<int>(q) != i && static_cast<int>(q) != j) rest.push_back(q);
  const T& ak = chi.tail[rest[0] - 1];
  const T& al = chi.tail[rest[1] - 1];
  const T merged = chi.tail[static_cast<std::size_t>(i - 1)] + chi.tail[static_cast<std::size_t>(j - 1)];
  const std::string ks = detail::a(rest[0]);
  const std::string ls = detail::a(rest[1]);
  const std::string ms = detail::a(static_cast<std::size_t>(i)) + "+" + detail::a(static_cast<std::size_t>(j));
  v.require(detail::positive(T(ak + al - merged)), ks + "+" + ls + " > " + ms);
  v.require(detail::positive(T(al + merged - ak)), ks + " < " + ls + "+" + ms);
  v.require(detail::positive(T(ak + merged - al)), ls + " < " + ks + "+" + ms);
  v.require(detail::zero(T(a0 + a0 - sum)), "2a0 = a1+a2+a3+a4");
  for (std::size_t q = 0; q < 4; ++q) v.require(detail::positive(chi.tail[q]), detail::a(q + 1) + " > 0");
  return v;
}

/// (2 - def(d)/d0; 1, 1, 1, 1), admissible for every discrete brick dimension d.
inline RationalWeights canonical_character(const DimensionVector& d) {
  if (!recognize_discrete(d)) throw Error(ErrorCode::NotDiscreteRoot, to_string(d) + " is not a discrete brick dimension");
  const Rational def(def_form(d));
  return RationalWeights{Rational(2) - def / Rational(d.head), {1, 1, 1, 1}};
}

}  // namespace orthoscalar
