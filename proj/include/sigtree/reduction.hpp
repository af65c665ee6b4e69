#pragma once

// Reduced paths of piecewise-linear paths: backtrack cancellation, the
// tree-like decision, loop erasure and tree-like test data.

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "sigtree/errors.hpp"
#include "sigtree/exact.hpp"
#include "sigtree/paths.hpp"

namespace sigtree {

namespace detail {

template <class Scalar>
std::vector<Scalar> difference(std::span<const Scalar> a, std::span<const Scalar> b) {
  std::vector<Scalar> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

template <class Scalar>
double approx_length(std::span<const Scalar> v) {
  double s = 0.0;
  for (const auto& x : v) {
    const double d = ScalarOps<Scalar>::to_double(x);
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace detail

/// Incremental backtrack-cancelling reducer. Vertices are fed one at a
/// time; the stack always holds a path with no negligible segments and no
/// two consecutive collinear segments. Stack vertices are always copies of
/// input vertices.
template <class Scalar>
class Reducer {
 public:
  using Ops = ScalarOps<Scalar>;

  explicit Reducer(std::span<const Scalar> start) : dim_(start.size()) {
    stack_.insert(stack_.end(), start.begin(), start.end());
    heights_.push_back(0.0);
  }

  /// Moves the path end to `p`. Returns the lowest height (1-variation of
  /// the reduced prefix) reached while travelling the segment.
  double push(std::span<const Scalar> p) {
    double lowest = height();
    while (true) {
      const auto q = top(0);
      const std::vector<Scalar> v = detail::difference<Scalar>(p, q);
      if (count() == 1) {
        if (!Ops::negligible(v, q, p)) append(p);
        return lowest;
      }
      const auto r = top(1);
      const std::vector<Scalar> u = detail::difference<Scalar>(q, r);
      if (Ops::negligible(v, u, q)) return lowest;
      if (!Ops::collinear(u, v)) {
        append(p);
        return lowest;
      }
      if (Ops::dot(u, v) > 0) {  // same direction: merge
        pop();
        append(p);
        return lowest;
      }
      const std::vector<Scalar> w = detail::difference<Scalar>(p, r);
      if (Ops::negligible(w, u, v)) {  // exact backtrack
        pop();
        return std::min(lowest, height());
      }
      if (Ops::dot(w, u) > 0) {  // partial backtrack, p between r and q
        pop();
        append(p);
        return std::min(lowest, height());
      }
      pop();  // overshoot: continue from r
      lowest = std::min(lowest, height());
    }
  }

  std::size_t count() const { return stack_.size() / dim_; }
  double height() const { return heights_.back(); }

  BasicPolyPath<Scalar> path() const { return BasicPolyPath<Scalar>(dim_, stack_); }

 private:
  std::span<const Scalar> top(std::size_t back) const {
    return std::span<const Scalar>(stack_).subspan((count() - 1 - back) * dim_, dim_);
  }
  void append(std::span<const Scalar> p) {
    const std::vector<Scalar> seg = detail::difference<Scalar>(p, top(0));
    heights_.push_back(heights_.back() + detail::approx_length<Scalar>(seg));
    stack_.insert(stack_.end(), p.begin(), p.end());
  }
  void pop() {
    stack_.resize(stack_.size() - dim_);
    heights_.pop_back();
  }

  std::size_t dim_;
  std::vector<Scalar> stack_;
  std::vector<double> heights_;
};

/// Drops negligible segments and merges consecutive same-direction
/// collinear segments. Keeps a subset of the original vertices.
template <class Scalar>
BasicPolyPath<Scalar> normalize(const BasicPolyPath<Scalar>& x) {
  using Ops = ScalarOps<Scalar>;
  const std::size_t dim = x.dim();
  std::vector<Scalar> out(x.start().begin(), x.start().end());
  auto vertex = [&](std::size_t k) { return std::span<const Scalar>(out).subspan(k * dim, dim); };
  for (std::size_t k = 1; k < x.size(); ++k) {
    const auto p = x.vertex(k);
    const std::size_t n = out.size() / dim;
    const auto q = vertex(n - 1);
    const std::vector<Scalar> v = detail::difference<Scalar>(p, q);
    if (n == 1) {
      if (!Ops::negligible(v, q, p)) out.insert(out.end(), p.begin(), p.end());
      continue;
    }
    const std::vector<Scalar> u = detail::difference<Scalar>(q, vertex(n - 2));
    if (Ops::negligible(v, u, q)) continue;
    if (Ops::collinear(u, v) && Ops::dot(u, v) > 0) out.resize(out.size() - dim);
    out.insert(out.end(), p.begin(), p.end());
  }
  return BasicPolyPath<Scalar>(dim, std::move(out));
}

/// The reduced path: backtracks cancelled until none remain. Start and end
/// are preserved and every vertex is an input vertex.
template <class Scalar>
BasicPolyPath<Scalar> reduce(const BasicPolyPath<Scalar>& x) {
  Reducer<Scalar> reducer(x.start());
  for (std::size_t k = 1; k < x.size(); ++k) reducer.push(x.vertex(k));
  return reducer.path();
}

/// Same normal form as `reduce`, reached by repeatedly deleting the middle
/// vertex of a randomly chosen reducible spot (duplicate vertex or
/// collinear triple). Used to witness confluence.
template <class Scalar>
BasicPolyPath<Scalar> reduce_randomized(const BasicPolyPath<Scalar>& x, std::mt19937_64& rng) {
  using Ops = ScalarOps<Scalar>;
  const std::size_t dim = x.dim();
  std::vector<std::vector<Scalar>> v;
  for (std::size_t k = 0; k < x.size(); ++k) v.emplace_back(x.vertex(k).begin(), x.vertex(k).end());

  // Index of the vertex to delete, if spot i is reducible. Spot i < n-1 is
  // the segment i -> i+1 (zero length), spot n-1+j the triple j, j+1, j+2.
  auto removable = [&](std::size_t spot) -> std::ptrdiff_t {
    const std::size_t n = v.size();
    if (spot < n - 1) {
      const auto seg = detail::difference<Scalar>(v[spot + 1], v[spot]);
      if (!Ops::negligible(seg, v[spot], v[spot + 1])) return -1;
      return static_cast<std::ptrdiff_t>(spot + 1 == n - 1 ? spot : spot + 1);
    }
    const std::size_t j = spot - (n - 1);
    const auto u = detail::difference<Scalar>(v[j + 1], v[j]);
    const auto w = detail::difference<Scalar>(v[j + 2], v[j + 1]);
    if (Ops::negligible(u, v[j], v[j + 1]) || Ops::negligible(w, v[j + 1], v[j + 2])) return -1;
    if (!Ops::collinear(u, w)) return -1;
    return static_cast<std::ptrdiff_t>(j + 1);
  };

  while (v.size() > 1) {
    const std::size_t n = v.size();
    const std::size_t spots = (n - 1) + (n >= 3 ? n - 2 : 0);
    std::vector<std::size_t> candidates;
    for (std::size_t s = 0; s < spots; ++s)
      if (removable(s) >= 0) candidates.push_back(s);
    if (candidates.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    const std::ptrdiff_t victim = removable(candidates[pick(rng)]);
    if (victim == 0) {
      v.erase(v.begin() + 1);  // keep the start vertex
    } else {
      v.erase(v.begin() + victim);
    }
  }
  std::vector<Scalar> coords;
  for (const auto& p : v) coords.insert(coords.end(), p.begin(), p.end());
  return BasicPolyPath<Scalar>(dim, std::move(coords));
}

/// Tree-like iff the reduced path is constant.
template <class Scalar>
bool is_tree_like(const BasicPolyPath<Scalar>& x) {
  return reduce(x).size() == 1;
}

/// Paths equal as vertex sequences (exactly, or within the geometry
/// tolerance for floating paths).
template <class Scalar>
bool same_vertices(const BasicPolyPath<Scalar>& a, const BasicPolyPath<Scalar>& b) {
  if (a.dim() != b.dim() || a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!ScalarOps<Scalar>::equal(a.vertex(k), b.vertex(k))) return false;
  return true;
}

/// Largest coordinate difference between two paths with equal vertex count.
double max_vertex_gap(const PolyPath& a, const PolyPath& b);

template <class T>
struct LoopErasure {
  std::vector<T> path;
  /// First and last sample coincide; `path` is then that single point.
  bool closed = false;
};

/// First-return loop erasure: scan forward and, on revisiting a value
/// already on the current path, cut back to its first occurrence. The
/// result is injective, runs from the first sample to the last and only
/// visits sampled values.
template <class T, class Eq = std::equal_to<T>>
LoopErasure<T> erase_loops(std::span<const T> samples, Eq eq = {}) {
  LoopErasure<T> out;
  for (const T& s : samples) {
    std::size_t hit = out.path.size();
    for (std::size_t i = 0; i < out.path.size(); ++i) {
      if (eq(out.path[i], s)) {
        hit = i;
        break;
      }
    }
    if (hit < out.path.size()) {
      out.path.resize(hit + 1);
    } else {
      out.path.push_back(s);
    }
  }
  out.closed = !samples.empty() && eq(samples.front(), samples.back());
  return out;
}

/// Heights of a tree-like path at its vertices together with the lowest
/// height reached on each segment.
struct HeightProfile {
  std::vector<double> vertex_heights;
  std::vector<double> segment_minima;
};

/// h(t_k) = 1-variation of reduce(x on [0, t_k]). Throws PreconditionError
/// when x is not tree-like.
HeightProfile height_function(const PolyPath& x);

/// Checks h_s = h_t = inf_{[s,t]} h  =>  x_s = x_t over all vertex pairs.
/// Returns the number of violating pairs.
std::size_t height_condition_violations(const PolyPath& x, const HeightProfile& h,
                                        double tol = 1e-9);

/// Random push/pop walk on a randomly grown geometric tree rooted at the
/// origin, returning to the root. Each move either steps to a child (new or
/// previously grown) or back to the parent; after `n_moves` moves the walk
/// retraces to the root.
PolyPath sample_tree_like(std::uint64_t seed, std::size_t n_moves, std::size_t dim);

/// Reduced random path with `segments` segments in general position.
PolyPath sample_reduced(std::mt19937_64& rng, std::size_t segments, std::size_t dim);

/// Inserts `count` tree-like excursions (out-and-back spurs or short tree
/// walks) at random vertices or at random interior points of segments.
/// The signature is unchanged.
PolyPath insert_spurs(const PolyPath& x, std::size_t count, std::mt19937_64& rng);

}  // namespace sigtree
