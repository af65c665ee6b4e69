#pragma once

// Piecewise-linear paths, sampled group-valued paths, and p-variation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigtree/errors.hpp"
#include "sigtree/exact.hpp"
#include "sigtree/tensor_algebra.hpp"

namespace sigtree {

/// Piecewise-linear path in R^d: an ordered list of at least one vertex,
/// optionally time-stamped. Without time stamps vertex k sits at time k.
template <class Scalar>
class BasicPolyPath {
 public:
  using scalar_type = Scalar;

  /// Constant path at the origin.
  explicit BasicPolyPath(std::size_t dim) : dim_(dim), coords_(dim, Scalar(0)) {
    if (dim == 0) throw ValidationError("path dimension must be positive");
  }

  BasicPolyPath(std::size_t dim, std::vector<Scalar> coords,
                std::optional<std::vector<double>> times = std::nullopt)
      : dim_(dim), coords_(std::move(coords)), times_(std::move(times)) {
    if (dim == 0) throw ValidationError("path dimension must be positive");
    if (coords_.empty() || coords_.size() % dim != 0) {
      throw ValidationError("path needs at least one vertex of dimension " + std::to_string(dim));
    }
    if (times_) {
      if (times_->size() != size()) throw ValidationError("one time stamp per vertex required");
      for (std::size_t k = 1; k < times_->size(); ++k) {
        if (!((*times_)[k] > (*times_)[k - 1])) {
          throw ValidationError("time stamps must be strictly increasing (vertex " +
                                std::to_string(k) + ")");
        }
      }
    }
  }

  static BasicPolyPath from_vertices(const std::vector<std::vector<Scalar>>& vertices) {
    if (vertices.empty()) throw ValidationError("path needs at least one vertex");
    const std::size_t dim = vertices.front().size();
    std::vector<Scalar> coords;
    coords.reserve(dim * vertices.size());
    for (const auto& v : vertices) {
      if (v.size() != dim) throw ValidationError("inconsistent vertex dimension");
      coords.insert(coords.end(), v.begin(), v.end());
    }
    return BasicPolyPath(dim, std::move(coords));
  }

  std::size_t dim() const { return dim_; }
  /// Number of vertices.
  std::size_t size() const { return coords_.size() / dim_; }
  std::size_t segment_count() const { return size() - 1; }

  std::span<const Scalar> vertex(std::size_t k) const {
    return std::span<const Scalar>(coords_).subspan(k * dim_, dim_);
  }
  std::span<const Scalar> start() const { return vertex(0); }
  std::span<const Scalar> end() const { return vertex(size() - 1); }

  /// Increment of segment k (vertex k to k+1).
  std::vector<Scalar> increment(std::size_t k) const {
    std::vector<Scalar> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) out[i] = coords_[(k + 1) * dim_ + i] - coords_[k * dim_ + i];
    return out;
  }

  const std::vector<Scalar>& coords() const { return coords_; }
  const std::optional<std::vector<double>>& times() const { return times_; }
  double time(std::size_t k) const { return times_ ? (*times_)[k] : static_cast<double>(k); }

  /// Vertices 0..k inclusive.
  BasicPolyPath prefix(std::size_t k) const {
    std::vector<Scalar> c(coords_.begin(), coords_.begin() + static_cast<std::ptrdiff_t>((k + 1) * dim_));
    std::optional<std::vector<double>> t;
    if (times_) t.emplace(times_->begin(), times_->begin() + static_cast<std::ptrdiff_t>(k + 1));
    return BasicPolyPath(dim_, std::move(c), std::move(t));
  }

  /// Vertices k..end.
  BasicPolyPath suffix(std::size_t k) const {
    std::vector<Scalar> c(coords_.begin() + static_cast<std::ptrdiff_t>(k * dim_), coords_.end());
    std::optional<std::vector<double>> t;
    if (times_) t.emplace(times_->begin() + static_cast<std::ptrdiff_t>(k), times_->end());
    return BasicPolyPath(dim_, std::move(c), std::move(t));
  }

  BasicPolyPath translated(std::span<const Scalar> offset) const {
    std::vector<Scalar> c = coords_;
    for (std::size_t k = 0; k < size(); ++k)
      for (std::size_t i = 0; i < dim_; ++i) c[k * dim_ + i] += offset[i];
    return BasicPolyPath(dim_, std::move(c), times_);
  }

  /// Translate so the first vertex is the origin.
  BasicPolyPath based_at_origin() const {
    std::vector<Scalar> neg(start().begin(), start().end());
    for (auto& x : neg) x = -x;
    return translated(neg);
  }

  bool operator==(const BasicPolyPath&) const = default;

 private:
  std::size_t dim_;
  std::vector<Scalar> coords_;
  std::optional<std::vector<double>> times_;
};

using PolyPath = BasicPolyPath<double>;
using ExactPolyPath = BasicPolyPath<Rational>;

/// x followed by y translated so that y starts where x ends.
template <class Scalar>
BasicPolyPath<Scalar> concat(const BasicPolyPath<Scalar>& x, const BasicPolyPath<Scalar>& y) {
  if (x.dim() != y.dim()) throw IncompatibleOperands("concat: dimension mismatch");
  std::vector<Scalar> coords = x.coords();
  const auto end = x.end();
  const auto y0 = y.start();
  for (std::size_t k = 1; k < y.size(); ++k) {
    const auto v = y.vertex(k);
    for (std::size_t i = 0; i < x.dim(); ++i) coords.push_back(end[i] + (v[i] - y0[i]));
  }
  return BasicPolyPath<Scalar>(x.dim(), std::move(coords));
}

/// Vertex order reversed; time stamps are dropped.
template <class Scalar>
BasicPolyPath<Scalar> reverse(const BasicPolyPath<Scalar>& x) {
  std::vector<Scalar> coords;
  coords.reserve(x.coords().size());
  for (std::size_t k = x.size(); k-- > 0;) {
    const auto v = x.vertex(k);
    coords.insert(coords.end(), v.begin(), v.end());
  }
  return BasicPolyPath<Scalar>(x.dim(), std::move(coords));
}

PolyPath scaled(const PolyPath& x, double factor);
PolyPath to_double(const ExactPolyPath& x);

/// Group-valued path sampled at increasing times; common dim and depth.
class GroupPath {
 public:
  GroupPath(std::vector<GroupElement> samples, std::vector<double> times);

  std::size_t size() const { return samples_.size(); }
  const GroupElement& operator[](std::size_t k) const { return samples_[k]; }
  const std::vector<GroupElement>& samples() const { return samples_; }
  const std::vector<double>& times() const { return times_; }
  int dim() const { return samples_.front().dim(); }
  int depth() const { return samples_.front().depth(); }

  /// Samples first..last inclusive.
  GroupPath slice(std::size_t first, std::size_t last) const;
  /// True when two consecutive samples coincide exactly.
  bool has_repeated_points() const;

 private:
  std::vector<GroupElement> samples_;
  std::vector<double> times_;
};

// ------------------------------------------------------------ p-variation

/// sup over sub-partitions of 0..n-1 (endpoints included) of
/// sum d(t_i, t_{i+1})^p, by O(n^2) dynamic programming.
template <class Dist>
double p_variation_power(std::size_t n, Dist&& dist, double p) {
  if (!(p >= 1.0)) throw ValidationError("p-variation requires p >= 1");
  if (n < 2) return 0.0;
  std::vector<double> best(n, 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    double b = 0.0;
    for (std::size_t i = 0; i < j; ++i) b = std::max(b, best[i] + std::pow(dist(i, j), p));
    best[j] = b;
  }
  return best[n - 1];
}

template <class Dist>
double p_variation(std::size_t n, Dist&& dist, double p) {
  return std::pow(p_variation_power(n, std::forward<Dist>(dist), p), 1.0 / p);
}

/// Euclidean p-variation of the vertex sequence; exact for the
/// piecewise-linear path when p >= 1.
double p_variation(const PolyPath& x, double p);
double p_variation(std::span<const std::vector<double>> points, double p);
/// p-variation under group_distance; a lower bound for the continuous path.
double p_variation(const GroupPath& x, double p);
double p_variation_power(const GroupPath& x, double p);

/// max_{1<=i<=floor(p)} (sup_P sum ||pi_i(x_j^-1 x_{j+1} - y_j^-1 y_{j+1})||^{p/i})^{i/p}
double pvar_distance(const GroupPath& x, const GroupPath& y, double p);

}  // namespace sigtree
