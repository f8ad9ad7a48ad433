/**
 * @file weights.hpp
 * @brief Weight vectors (w0; w1, ..., wn), used both as generalized
 * dimensions and as characters, over integer, rational or real scalars.
 */
#pragma once

#include "orthoscalar/numerics.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace orthoscalar {

using Rational = boost::multiprecision::cpp_rational;

template <class T>
struct BasicWeightVector {
  T head{};
  std::vector<T> tail;

  std::size_t size() const noexcept { return tail.size(); }
  bool operator==(const BasicWeightVector&) const = default;
};

using WeightVector = BasicWeightVector<double>;
using RationalWeights = BasicWeightVector<Rational>;
using DimensionVector = BasicWeightVector<std::int64_t>;

template <class U, class T>
U scalar_cast(const T& value) {
  if constexpr (std::is_same_v<T, Rational>) {
    return static_cast<U>(value.template convert_to<U>());
  } else {
    return static_cast<U>(value);
  }
}

template <class U, class T>
BasicWeightVector<U> weight_cast(const BasicWeightVector<T>& w) {
  BasicWeightVector<U> out;
  out.head = scalar_cast<U>(w.head);
  out.tail.reserve(w.tail.size());
  for (const auto& v : w.tail) out.tail.push_back(scalar_cast<U>(v));
  return out;
}

/// Zero and sign tests for the scalar types weight vectors are instantiated with.
/// Exact for integers and rationals; absolute tolerance 1e-12 for doubles.
template <class T>
struct ScalarTraits {
  static bool is_zero(const T& v) { return v == T(0); }
  static bool is_positive(const T& v) { return v > T(0); }
};

template <>
struct ScalarTraits<double> {
  static constexpr double equality_tolerance = 1e-12;
  static bool is_zero(double v) { return std::abs(v) <= equality_tolerance; }
  static bool is_positive(double v) { return v > 0.0; }
};

template <class T>
std::ostream& operator<<(std::ostream& os, const BasicWeightVector<T>& w) {
  os << '(' << w.head << ';';
  for (std::size_t i = 0; i < w.tail.size(); ++i) os << (i ? "," : "") << w.tail[i];
  return os << ')';
}

template <class T>
std::string to_string(const BasicWeightVector<T>& w) {
  std::ostringstream os;
  os << w;
  return os.str();
}

namespace detail {

inline Rational parse_decimal(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::InvalidArgument, "empty number");
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  boost::multiprecision::cpp_int numerator = 0;
  boost::multiprecision::cpp_int denominator = 1;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c == '.') {
      if (seen_point) throw Error(ErrorCode::InvalidArgument, "bad number '" + std::string(text) + "'");
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      seen_digit = true;
      numerator = numerator * 10 + (c - '0');
      if (seen_point) denominator *= 10;
    } else {
      throw Error(ErrorCode::InvalidArgument, "bad number '" + std::string(text) + "'");
    }
  }
  if (!seen_digit) throw Error(ErrorCode::InvalidArgument, "bad number '" + std::string(text) + "'");
  Rational r(numerator, denominator);
  return negative ? Rational(-r) : r;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Parses "3", "-0.25", ".4" or "5/3" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  text = detail::trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return detail::parse_decimal(text);
  const Rational num = detail::parse_decimal(detail::trim(text.substr(0, slash)));
  const Rational den = detail::parse_decimal(detail::trim(text.substr(slash + 1)));
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
  return num / den;
}

/// Parses "a0,a1,...,an" (at least two entries) into a rational weight vector.
inline RationalWeights parse_weights(std::string_view text) {
  RationalWeights w;
  std::vector<Rational> values;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    values.push_back(parse_rational(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (values.size() < 2) throw Error(ErrorCode::InvalidArgument, "weight vector needs a head and a nonempty tail");
  w.head = values.front();
  w.tail.assign(values.begin() + 1, values.end());
  return w;
}

}  // namespace orthoscalar
