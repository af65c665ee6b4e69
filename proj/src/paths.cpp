#include "sigtree/paths.hpp"

#include <cmath>

#include "sigtree/kernels.hpp"

namespace sigtree {

PolyPath scaled(const PolyPath& x, double factor) {
  std::vector<double> coords = x.coords();
  for (double& c : coords) c *= factor;
  return PolyPath(x.dim(), std::move(coords), x.times());
}

PolyPath to_double(const ExactPolyPath& x) {
  std::vector<double> coords;
  coords.reserve(x.coords().size());
  for (const auto& c : x.coords()) coords.push_back(c.convert_to<double>());
  return PolyPath(x.dim(), std::move(coords), x.times());
}

GroupPath::GroupPath(std::vector<GroupElement> samples, std::vector<double> times)
    : samples_(std::move(samples)), times_(std::move(times)) {
  if (samples_.empty()) throw ValidationError("group path needs at least one sample");
  if (times_.size() != samples_.size()) throw ValidationError("one time per group sample required");
  for (std::size_t k = 0; k < samples_.size(); ++k) {
    require_compatible(samples_[0], samples_[k], "group path");
    if (k > 0 && !(times_[k] > times_[k - 1])) {
      throw ValidationError("group path times must be strictly increasing");
    }
  }
}

GroupPath GroupPath::slice(std::size_t first, std::size_t last) const {
  if (first > last || last >= size()) throw ValidationError("group path slice out of range");
  return GroupPath(
      std::vector<GroupElement>(samples_.begin() + static_cast<std::ptrdiff_t>(first),
                                samples_.begin() + static_cast<std::ptrdiff_t>(last + 1)),
      std::vector<double>(times_.begin() + static_cast<std::ptrdiff_t>(first),
                          times_.begin() + static_cast<std::ptrdiff_t>(last + 1)));
}

bool GroupPath::has_repeated_points() const {
  for (std::size_t k = 1; k < samples_.size(); ++k)
    if (samples_[k].series() == samples_[k - 1].series()) return true;
  return false;
}

double p_variation(const PolyPath& x, double p) {
  return p_variation(
      x.size(),
      [&](std::size_t i, std::size_t j) {
        const auto a = x.vertex(i);
        const auto b = x.vertex(j);
        double s = 0.0;
        for (std::size_t k = 0; k < x.dim(); ++k) s += (b[k] - a[k]) * (b[k] - a[k]);
        return std::sqrt(s);
      },
      p);
}

double p_variation(std::span<const std::vector<double>> points, double p) {
  return p_variation(
      points.size(),
      [&](std::size_t i, std::size_t j) {
        double s = 0.0;
        for (std::size_t k = 0; k < points[i].size(); ++k)
          s += (points[j][k] - points[i][k]) * (points[j][k] - points[i][k]);
        return std::sqrt(s);
      },
      p);
}

double p_variation_power(const GroupPath& x, double p) {
  if (!(p >= 1.0)) throw ValidationError("p-variation requires p >= 1");
  std::vector<GroupElement> inverses;
  inverses.reserve(x.size());
  for (const auto& g : x.samples()) inverses.push_back(group_inverse(g));
  const kernels::DistanceMatrix d = kernels::parallel::pairwise_distances(
      x.size(), [&](std::size_t i, std::size_t j) {
        return dilation_norm(tensor_mul(inverses[i], x[j]));
      });
  return p_variation_power(x.size(), d, p);
}

double p_variation(const GroupPath& x, double p) {
  return std::pow(p_variation_power(x, p), 1.0 / p);
}

double pvar_distance(const GroupPath& x, const GroupPath& y, double p) {
  if (!(p >= 1.0)) throw ValidationError("pvar_distance requires p >= 1");
  if (x.size() != y.size() || x.times() != y.times()) {
    throw IncompatibleOperands("pvar_distance: paths must share sample times");
  }
  require_compatible(x[0], y[0], "pvar_distance");
  if (max_level_difference(x[0], y[0]) != 0.0) {
    throw PreconditionError("pvar_distance: paths must start at the same point");
  }
  const int levels = std::min(static_cast<int>(std::floor(p)), x.depth());
  const std::size_t n = x.size();

  std::vector<GroupElement> xinv;
  std::vector<GroupElement> yinv;
  for (std::size_t k = 0; k < n; ++k) {
    xinv.push_back(group_inverse(x[k]));
    yinv.push_back(group_inverse(y[k]));
  }
  // level_norms[l-1][i*n+j] = ||pi_l(x_i^-1 x_j - y_i^-1 y_j)||
  std::vector<std::vector<double>> level_norms(static_cast<std::size_t>(levels),
                                               std::vector<double>(n * n, 0.0));
  const auto total = static_cast<long long>(n * n);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long ij = 0; ij < total; ++ij) {
    const std::size_t i = static_cast<std::size_t>(ij) / n;
    const std::size_t j = static_cast<std::size_t>(ij) % n;
    if (i >= j) continue;
    const TensorSeries diff = tensor_mul(xinv[i], x[j]) - tensor_mul(yinv[i], y[j]);
    for (int l = 1; l <= levels; ++l)
      level_norms[static_cast<std::size_t>(l - 1)][i * n + j] = level_norm(diff.level(l));
  }

  double result = 0.0;
  for (int l = 1; l <= levels; ++l) {
    const auto& norms = level_norms[static_cast<std::size_t>(l - 1)];
    const double sup = p_variation_power(
        n, [&](std::size_t i, std::size_t j) { return std::pow(norms[i * n + j], 1.0 / l); }, p);
    result = std::max(result, std::pow(sup, static_cast<double>(l) / p));
  }
  return result;
}

}  // namespace sigtree
