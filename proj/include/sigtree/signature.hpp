#pragma once

// Truncated signatures of piecewise-linear paths.

#include <optional>
#include <span>
#include <vector>

#include "sigtree/paths.hpp"
#include "sigtree/tensor_algebra.hpp"

namespace sigtree {

/// Chen product of the segment exponentials, accumulated left to right.
/// A single-vertex path has signature 1.
GroupElement sig(const PolyPath& x, int depth);

/// log of the signature.
LieSeries logsig(const PolyPath& x, int depth);

/// sig(x restricted to [t_0, t_k]) at every vertex time t_k.
GroupPath sig_prefix_path(const PolyPath& x, int depth);

/// Signatures of many paths, evaluated concurrently; output order matches
/// input order.
std::vector<GroupElement> signatures(std::span<const PolyPath> paths, int depth);

/// Smallest level n whose l1 difference exceeds tol * max(1, ||pi_n(g)||,
/// ||pi_n(h)||), or nothing when the truncations agree.
std::optional<int> distinguishing_level(const TensorSeries& g, const TensorSeries& h,
                                        double tol = kDefaultTolerance);

}  // namespace sigtree
