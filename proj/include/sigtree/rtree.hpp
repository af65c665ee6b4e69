#pragma once

// The prefix order, meet and R-tree metric on reduced paths from a common
// origin, tree-like factorizations and the right-concatenation continuity
// estimate.

#include <cstdint>
#include <random>
#include <vector>

#include "sigtree/exact.hpp"
#include "sigtree/kernels.hpp"
#include "sigtree/paths.hpp"
#include "sigtree/reduction.hpp"

namespace sigtree {

/// A reduced path starting at the origin; identified up to
/// reparametrisation by its vertex sequence.
template <class Scalar>
class BasicTreePoint {
 public:
  using Ops = ScalarOps<Scalar>;

  /// The root (constant path) in R^dim.
  explicit BasicTreePoint(std::size_t dim) : path_(dim) {}
  /// Reduced form of x translated to start at the origin.
  explicit BasicTreePoint(const BasicPolyPath<Scalar>& x) : path_(reduce(x.based_at_origin())) {}

  const BasicPolyPath<Scalar>& path() const { return path_; }
  std::size_t dim() const { return path_.dim(); }
  std::size_t segment_count() const { return path_.segment_count(); }
  std::span<const Scalar> endpoint() const { return path_.end(); }
  bool is_root() const { return path_.size() == 1; }

  /// 1-variation (total length). Exact for rational points with rational
  /// segment lengths.
  Scalar length() const {
    Scalar total(0);
    for (std::size_t k = 0; k < path_.segment_count(); ++k) total += Ops::length(path_.increment(k));
    return total;
  }

  bool operator==(const BasicTreePoint& other) const { return same_vertices(path_, other.path_); }

 private:
  BasicPolyPath<Scalar> path_;
};

using TreePoint = BasicTreePoint<double>;
using ExactTreePoint = BasicTreePoint<Rational>;

/// Longest common prefix, with partial overlap on the first segment where
/// the two paths part.
template <class Scalar>
BasicTreePoint<Scalar> meet(const BasicTreePoint<Scalar>& a, const BasicTreePoint<Scalar>& b) {
  using Ops = ScalarOps<Scalar>;
  if (a.dim() != b.dim()) throw IncompatibleOperands("meet: dimension mismatch");
  const auto& pa = a.path();
  const auto& pb = b.path();
  std::vector<Scalar> coords(pa.start().begin(), pa.start().end());
  const std::size_t common = std::min(pa.segment_count(), pb.segment_count());
  for (std::size_t k = 0; k < common; ++k) {
    if (Ops::equal(pa.vertex(k + 1), pb.vertex(k + 1))) {
      coords.insert(coords.end(), pa.vertex(k + 1).begin(), pa.vertex(k + 1).end());
      continue;
    }
    const std::vector<Scalar> u = pa.increment(k);
    const std::vector<Scalar> v = pb.increment(k);
    if (Ops::collinear(u, v) && Ops::dot(u, v) > 0) {
      const auto shorter = Ops::dot(u, u) <= Ops::dot(v, v) ? pa.vertex(k + 1) : pb.vertex(k + 1);
      coords.insert(coords.end(), shorter.begin(), shorter.end());
    }
    break;
  }
  return BasicTreePoint<Scalar>(BasicPolyPath<Scalar>(pa.dim(), std::move(coords)));
}

enum class PrefixOrder { Equal, LessEqual, GreaterEqual, Incomparable };

const char* to_string(PrefixOrder order);

/// a <= b iff a is (a reparametrisation of) an initial piece of b.
template <class Scalar>
PrefixOrder prefix_order(const BasicTreePoint<Scalar>& a, const BasicTreePoint<Scalar>& b) {
  const BasicTreePoint<Scalar> m = meet(a, b);
  const bool a_below = m == a;
  const bool b_below = m == b;
  if (a_below && b_below) return PrefixOrder::Equal;
  if (a_below) return PrefixOrder::LessEqual;
  if (b_below) return PrefixOrder::GreaterEqual;
  return PrefixOrder::Incomparable;
}

/// ||a||_1 + ||b||_1 - 2 ||a ^ b||_1, exact in rational mode.
template <class Scalar>
Scalar tree_distance(const BasicTreePoint<Scalar>& a, const BasicTreePoint<Scalar>& b) {
  return a.length() + b.length() - Scalar(2) * meet(a, b).length();
}

/// ||a||_p^p + ||b||_p^p - 2 ||a ^ b||_p^p with Euclidean vertex
/// p-variation; p = 1 gives the R-tree metric.
double tree_distance(const TreePoint& a, const TreePoint& b, double p);

/// Initial piece of `x` of 1-variation `length` (clamped to the whole
/// point).
template <class Scalar>
BasicTreePoint<Scalar> prefix_at_length(const BasicTreePoint<Scalar>& x, const Scalar& length) {
  using Ops = ScalarOps<Scalar>;
  const auto& path = x.path();
  std::vector<Scalar> coords(path.start().begin(), path.start().end());
  Scalar travelled(0);
  for (std::size_t k = 0; k < path.segment_count(); ++k) {
    const std::vector<Scalar> inc = path.increment(k);
    const Scalar seg = Ops::length(inc);
    if (travelled + seg <= length) {
      coords.insert(coords.end(), path.vertex(k + 1).begin(), path.vertex(k + 1).end());
      travelled += seg;
      continue;
    }
    const Scalar f = (length - travelled) / seg;
    if (f > Scalar(0)) {
      for (std::size_t i = 0; i < path.dim(); ++i) coords.push_back(path.vertex(k)[i] + f * inc[i]);
    }
    break;
  }
  return BasicTreePoint<Scalar>(BasicPolyPath<Scalar>(path.dim(), std::move(coords)));
}

struct FourPointReport {
  std::size_t points = 0;
  std::size_t quadruples = 0;
  std::size_t violations = 0;
};

/// Checks d(a,b)+d(c,e) <= max(d(a,c)+d(b,e), d(a,e)+d(b,c)) for every
/// labelling of every 4-subset, i.e. that the two largest of the three pair
/// sums coincide. `tol` is ignored for exact scalars.
template <class Scalar>
FourPointReport four_point_check(const std::vector<BasicTreePoint<Scalar>>& points, double tol = 1e-10) {
  const std::size_t n = points.size();
  std::vector<Scalar> d(n * n, Scalar(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = tree_distance(points[i], points[j]);
  auto D = [&](std::size_t i, std::size_t j) -> const Scalar& { return d[i * n + j]; };

  FourPointReport report;
  report.points = n;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t e = c + 1; e < n; ++e) {
          ++report.quadruples;
          Scalar s[3] = {D(a, b) + D(c, e), D(a, c) + D(b, e), D(a, e) + D(b, c)};
          std::sort(std::begin(s), std::end(s));
          bool ok;
          if constexpr (ScalarOps<Scalar>::exact) {
            ok = s[1] == s[2];
          } else {
            ok = s[2] - s[1] <= tol * std::max(Scalar(1), s[2]);
          }
          if (!ok) ++report.violations;
        }
  return report;
}

/// Random tree points in R^dim (dim 2 or 3) with rational coordinates and
/// rational segment lengths: branches of a random reduced forest sharing
/// initial pieces, truncated at random rational lengths.
std::vector<ExactTreePoint> sample_exact_tree_points(std::uint64_t seed, std::size_t count,
                                                     std::size_t dim = 2);

TreePoint to_double(const ExactTreePoint& p);

/// phi(t_k) = reduced prefix of x up to vertex k; psi evaluates phi back to
/// x_k; heights are tree distances to the root.
struct TreeFactorization {
  std::vector<TreePoint> phi;
  bool psi_check = false;
  std::vector<double> height;
};

/// Throws PreconditionError when x is not tree-like.
TreeFactorization tree_factorization(const PolyPath& x);

struct ContinuityGap {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Both sides of ||S||^p - ||S|_[0,s]||^p <= (1+p) ||S||^{p-1} ||S|_[s,T]||
/// for the p-variation (over samples) under the metric `d`; s is a sample
/// index.
ContinuityGap concat_continuity_gap(const kernels::DistanceMatrix& d, std::size_t s, double p);
ContinuityGap concat_continuity_gap(const GroupPath& path, std::size_t s, double p);
/// Family of tree points under the tree metric.
ContinuityGap concat_continuity_gap(const std::vector<TreePoint>& family, std::size_t s, double p);

}  // namespace sigtree
