#include "sigtree/signature.hpp"

#include <algorithm>

#include "sigtree/errors.hpp"
#include "sigtree/kernels.hpp"

namespace sigtree {

GroupElement sig(const PolyPath& x, int depth) {
  if (depth < 1) throw ValidationError("signature depth must be at least 1");
  const int dim = static_cast<int>(x.dim());
  TensorSeries acc = TensorSeries::identity(dim, depth);
  for (std::size_t k = 0; k < x.segment_count(); ++k) {
    const std::vector<double> v = x.increment(k);
    acc = tensor_mul(acc, segment_exp(v, depth));
  }
  return GroupElement(std::move(acc));
}

LieSeries logsig(const PolyPath& x, int depth) { return group_log(sig(x, depth)); }

GroupPath sig_prefix_path(const PolyPath& x, int depth) {
  if (depth < 1) throw ValidationError("signature depth must be at least 1");
  const int dim = static_cast<int>(x.dim());
  std::vector<GroupElement> samples;
  std::vector<double> times;
  samples.reserve(x.size());
  samples.push_back(GroupElement::identity(dim, depth));
  times.push_back(x.time(0));
  for (std::size_t k = 0; k < x.segment_count(); ++k) {
    const std::vector<double> v = x.increment(k);
    samples.push_back(GroupElement(tensor_mul(samples.back(), segment_exp(v, depth))));
    times.push_back(x.time(k + 1));
  }
  return GroupPath(std::move(samples), std::move(times));
}

std::vector<GroupElement> signatures(std::span<const PolyPath> paths, int depth) {
  return kernels::parallel::signatures(paths, depth);
}

std::optional<int> distinguishing_level(const TensorSeries& g, const TensorSeries& h, double tol) {
  require_compatible(g, h, "distinguishing_level");
  for (int n = 0; n <= g.depth(); ++n) {
    const auto a = g.level(n);
    const auto b = h.level(n);
    double diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) diff += std::abs(a[i] - b[i]);
    const double scale = std::max({1.0, level_norm(a), level_norm(b)});
    if (diff > tol * scale) return n;
  }
  return std::nullopt;
}

}  // namespace sigtree
