#pragma once

// Scalar policies for path geometry. Floating paths compare with relative
// tolerances; rational paths compare exactly.

#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "sigtree/errors.hpp"

namespace sigtree {

using Rational = boost::multiprecision::cpp_rational;

/// Relative tolerance for collinearity and coincidence of float geometry.
inline constexpr double kGeometryTolerance = 1e-12;

template <class Scalar>
struct ScalarOps;

template <>
struct ScalarOps<double> {
  static constexpr bool exact = false;

  static double from_double(double x) { return x; }
  static double to_double(double x) { return x; }

  static double dot(std::span<const double> u, std::span<const double> v) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
  }
  static double length(std::span<const double> v) { return std::sqrt(dot(v, v)); }

  /// |v| negligible relative to max(|a|, |b|); exact zero always is.
  static bool negligible(std::span<const double> v, std::span<const double> a,
                         std::span<const double> b) {
    const double n = length(v);
    return n == 0.0 || n <= kGeometryTolerance * std::max(length(a), length(b));
  }

  static bool equal(std::span<const double> u, std::span<const double> v) {
    double diff = 0.0;
    double mag = 1.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      diff = std::max(diff, std::abs(u[i] - v[i]));
      mag = std::max({mag, std::abs(u[i]), std::abs(v[i])});
    }
    return diff <= kGeometryTolerance * mag;
  }

  /// Nonzero u, v parallel or antiparallel: the component of v orthogonal
  /// to u is negligible relative to |v|.
  static bool collinear(std::span<const double> u, std::span<const double> v) {
    const double uu = dot(u, u);
    const double uv = dot(u, v);
    double orth = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double r = v[i] - (uv / uu) * u[i];
      orth += r * r;
    }
    return std::sqrt(orth) <= kGeometryTolerance * length(v);
  }
};

template <>
struct ScalarOps<Rational> {
  static constexpr bool exact = true;

  static Rational from_double(double x) { return Rational(x); }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }

  static Rational dot(std::span<const Rational> u, std::span<const Rational> v) {
    Rational s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
  }

  /// Exact Euclidean length; the squared length must be the square of a
  /// rational.
  static Rational length(std::span<const Rational> v) {
    using boost::multiprecision::cpp_int;
    const Rational sq = dot(v, v);
    const cpp_int num = boost::multiprecision::numerator(sq);
    const cpp_int den = boost::multiprecision::denominator(sq);
    const cpp_int rn = boost::multiprecision::sqrt(num);
    const cpp_int rd = boost::multiprecision::sqrt(den);
    if (rn * rn != num || rd * rd != den) {
      throw ValidationError("exact mode: segment length is irrational");
    }
    return Rational(rn, rd);
  }

  static bool negligible(std::span<const Rational> v, std::span<const Rational> /*a*/,
                         std::span<const Rational> /*b*/) {
    for (const auto& x : v)
      if (x != 0) return false;
    return true;
  }

  static bool equal(std::span<const Rational> u, std::span<const Rational> v) {
    for (std::size_t i = 0; i < u.size(); ++i)
      if (u[i] != v[i]) return false;
    return true;
  }

  static bool collinear(std::span<const Rational> u, std::span<const Rational> v) {
    const Rational uu = dot(u, u);
    const Rational uv = dot(u, v);
    for (std::size_t i = 0; i < u.size(); ++i)
      if (v[i] * uu != uv * u[i]) return false;
    return true;
  }
};

}  // namespace sigtree
