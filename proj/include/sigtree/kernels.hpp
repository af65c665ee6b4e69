#pragma once

// Data-parallel kernels. Every kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::parallel with identical
// results; the library entry points dispatch to the parallel versions.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "sigtree/tensor_algebra.hpp"

namespace sigtree {

template <class Scalar>
class BasicPolyPath;
using PolyPath = BasicPolyPath<double>;

namespace kernels {

/// Row-major n x n matrix of pairwise distances.
struct DistanceMatrix {
  std::size_t n = 0;
  std::vector<double> values;
  double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

namespace serial {

TensorSeries tensor_mul(const TensorSeries& a, const TensorSeries& b);
std::vector<GroupElement> signatures(std::span<const PolyPath> paths, int depth);
DistanceMatrix pairwise_distances(std::size_t n,
                                  const std::function<double(std::size_t, std::size_t)>& dist);

}  // namespace serial

namespace parallel {

// Levels with fewer coefficients than this are multiplied serially.
inline constexpr std::size_t kMinParallelLevel = 4096;

TensorSeries tensor_mul(const TensorSeries& a, const TensorSeries& b);
std::vector<GroupElement> signatures(std::span<const PolyPath> paths, int depth);
/// Only the upper triangle (i < j) is evaluated by `dist`; the rest is
/// mirrored, the diagonal is zero.
DistanceMatrix pairwise_distances(std::size_t n,
                                  const std::function<double(std::size_t, std::size_t)>& dist);

}  // namespace parallel

int max_threads();

}  // namespace kernels
}  // namespace sigtree
