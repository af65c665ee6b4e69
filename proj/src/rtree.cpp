#include "sigtree/rtree.hpp"

#include <array>
#include <cmath>

namespace sigtree {

const char* to_string(PrefixOrder order) {
  switch (order) {
    case PrefixOrder::Equal: return "equal";
    case PrefixOrder::LessEqual: return "less-equal";
    case PrefixOrder::GreaterEqual: return "greater-equal";
    case PrefixOrder::Incomparable: return "incomparable";
  }
  return "unknown";
}

double tree_distance(const TreePoint& a, const TreePoint& b, double p) {
  if (p == 1.0) return tree_distance(a, b);
  const double pa = p_variation_power(a.path().size(), [&](std::size_t i, std::size_t j) {
    return ScalarOps<double>::length(detail::difference<double>(a.path().vertex(j), a.path().vertex(i)));
  }, p);
  const TreePoint m = meet(a, b);
  const double pm = p_variation_power(m.path().size(), [&](std::size_t i, std::size_t j) {
    return ScalarOps<double>::length(detail::difference<double>(m.path().vertex(j), m.path().vertex(i)));
  }, p);
  const double pb = p_variation_power(b.path().size(), [&](std::size_t i, std::size_t j) {
    return ScalarOps<double>::length(detail::difference<double>(b.path().vertex(j), b.path().vertex(i)));
  }, p);
  return pa + pb - 2.0 * pm;
}

namespace {

// Unit vectors with rational coordinates.
std::vector<std::vector<Rational>> rational_directions(std::size_t dim) {
  std::vector<std::array<long, 4>> bases;  // numerators..., denominator
  if (dim == 2) {
    bases = {{1, 0, 0, 1}, {3, 4, 0, 5}, {4, 3, 0, 5}, {5, 12, 0, 13}, {12, 5, 0, 13}, {8, 15, 0, 17}, {15, 8, 0, 17}};
  } else if (dim == 3) {
    bases = {{1, 0, 0, 1}, {1, 2, 2, 3}, {2, 1, 2, 3}, {2, 2, 1, 3}, {2, 3, 6, 7}, {6, 2, 3, 7}, {3, 6, 2, 7}};
  } else {
    throw ValidationError("exact tree points: dimension must be 2 or 3");
  }
  std::vector<std::vector<Rational>> out;
  for (const auto& b : bases) {
    std::array<long, 3> comp{b[0], b[1], b[2]};
    // all coordinate permutations and sign patterns
    std::sort(comp.begin(), comp.begin() + static_cast<std::ptrdiff_t>(dim));
    do {
      for (unsigned signs = 0; signs < (1u << dim); ++signs) {
        std::vector<Rational> v(dim);
        for (std::size_t i = 0; i < dim; ++i)
          v[i] = Rational(((signs >> i) & 1u) ? -comp[i] : comp[i], b[3]);
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
      }
    } while (std::next_permutation(comp.begin(), comp.begin() + static_cast<std::ptrdiff_t>(dim)));
  }
  return out;
}

}  // namespace

std::vector<ExactTreePoint> sample_exact_tree_points(std::uint64_t seed, std::size_t count,
                                                     std::size_t dim) {
  using Ops = ScalarOps<Rational>;
  std::mt19937_64 rng(seed);
  const auto dirs = rational_directions(dim);
  std::uniform_int_distribution<std::size_t> pick_dir(0, dirs.size() - 1);
  std::uniform_int_distribution<int> quarter(1, 8);
  std::uniform_int_distribution<int> segs(1, 4);
  std::uniform_int_distribution<int> eighth(0, 8);

  // Grow branches; each starts from an initial piece of an earlier branch.
  std::vector<ExactTreePoint> branches;
  const std::size_t branch_count = std::max<std::size_t>(3, count / 3);
  for (std::size_t b = 0; b < branch_count; ++b) {
    ExactTreePoint base(dim);
    if (!branches.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, branches.size() - 1);
      const ExactTreePoint& parent = branches[pick(rng)];
      base = prefix_at_length(parent, parent.length() * Rational(eighth(rng), 8));
    }
    std::vector<Rational> coords = base.path().coords();
    const int n = segs(rng);
    for (int s = 0; s < n; ++s) {
      const std::size_t last = coords.size() - dim;
      std::vector<Rational> prev;
      if (coords.size() > dim) {
        prev.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) prev[i] = coords[last + i] - coords[last - dim + i];
      }
      std::vector<Rational> dir;
      do {
        dir = dirs[pick_dir(rng)];
      } while (!prev.empty() && Ops::collinear(prev, dir));
      const Rational len(quarter(rng), 4);
      for (std::size_t i = 0; i < dim; ++i) coords.push_back(coords[last + i] + len * dir[i]);
    }
    branches.emplace_back(ExactPolyPath(dim, std::move(coords)));
  }

  std::vector<ExactTreePoint> out;
  std::uniform_int_distribution<std::size_t> pick(0, branches.size() - 1);
  std::uniform_int_distribution<int> fraction(0, 16);
  for (std::size_t i = 0; i < count; ++i) {
    const ExactTreePoint& branch = branches[pick(rng)];
    out.push_back(prefix_at_length(branch, branch.length() * Rational(fraction(rng), 16)));
  }
  return out;
}

TreePoint to_double(const ExactTreePoint& p) { return TreePoint(to_double(p.path())); }

TreeFactorization tree_factorization(const PolyPath& x) {
  TreeFactorization out;
  const std::size_t dim = x.dim();
  Reducer<double> reducer(x.start());
  out.phi.emplace_back(dim);
  out.height.push_back(0.0);
  for (std::size_t k = 1; k < x.size(); ++k) {
    reducer.push(x.vertex(k));
    out.phi.emplace_back(reducer.path());
    out.height.push_back(tree_distance(out.phi.back(), out.phi.front()));
  }
  if (!out.phi.back().is_root()) {
    throw PreconditionError("tree_factorization: path is not tree-like");
  }
  out.psi_check = true;
  for (std::size_t k = 0; k < x.size(); ++k) {
    std::vector<double> image(x.start().begin(), x.start().end());
    const auto end = out.phi[k].endpoint();
    for (std::size_t i = 0; i < dim; ++i) image[i] += end[i];
    if (!ScalarOps<double>::equal(image, x.vertex(k))) out.psi_check = false;
  }
  return out;
}

ContinuityGap concat_continuity_gap(const kernels::DistanceMatrix& d, std::size_t s, double p) {
  if (d.n == 0 || s >= d.n) throw ValidationError("continuity gap: split index out of range");
  const double total = p_variation_power(d.n, d, p);
  const double head = p_variation_power(s + 1, d, p);
  const double tail = std::pow(
      p_variation_power(d.n - s, [&](std::size_t i, std::size_t j) { return d(s + i, s + j); }, p),
      1.0 / p);
  return {total - head, (1.0 + p) * std::pow(total, (p - 1.0) / p) * tail};
}

ContinuityGap concat_continuity_gap(const GroupPath& path, std::size_t s, double p) {
  std::vector<GroupElement> inverses;
  for (const auto& g : path.samples()) inverses.push_back(group_inverse(g));
  const auto d = kernels::parallel::pairwise_distances(path.size(), [&](std::size_t i, std::size_t j) {
    return dilation_norm(tensor_mul(inverses[i], path[j]));
  });
  return concat_continuity_gap(d, s, p);
}

ContinuityGap concat_continuity_gap(const std::vector<TreePoint>& family, std::size_t s, double p) {
  const auto d = kernels::parallel::pairwise_distances(
      family.size(), [&](std::size_t i, std::size_t j) { return tree_distance(family[i], family[j]); });
  return concat_continuity_gap(d, s, p);
}

}  // namespace sigtree
