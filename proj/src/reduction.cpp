#include "sigtree/reduction.hpp"

#include <algorithm>
#include <cmath>

namespace sigtree {

double max_vertex_gap(const PolyPath& a, const PolyPath& b) {
  if (a.coords().size() != b.coords().size()) {
    throw IncompatibleOperands("max_vertex_gap: paths differ in vertex count");
  }
  double gap = 0.0;
  for (std::size_t i = 0; i < a.coords().size(); ++i)
    gap = std::max(gap, std::abs(a.coords()[i] - b.coords()[i]));
  return gap;
}

HeightProfile height_function(const PolyPath& x) {
  HeightProfile h;
  Reducer<double> reducer(x.start());
  h.vertex_heights.push_back(0.0);
  for (std::size_t k = 1; k < x.size(); ++k) {
    h.segment_minima.push_back(reducer.push(x.vertex(k)));
    h.vertex_heights.push_back(reducer.height());
  }
  if (reducer.count() != 1) {
    throw PreconditionError("height_function: path is not tree-like (reduced path has " +
                            std::to_string(reducer.count() - 1) + " segments)");
  }
  return h;
}

std::size_t height_condition_violations(const PolyPath& x, const HeightProfile& h, double tol) {
  std::size_t violations = 0;
  const std::size_t n = x.size();
  for (std::size_t s = 0; s < n; ++s) {
    double inf = h.vertex_heights[s];
    for (std::size_t t = s + 1; t < n; ++t) {
      inf = std::min({inf, h.segment_minima[t - 1], h.vertex_heights[t]});
      const double hs = h.vertex_heights[s];
      const double ht = h.vertex_heights[t];
      if (std::abs(hs - ht) > tol || std::abs(hs - inf) > tol) continue;
      double gap = 0.0;
      for (std::size_t i = 0; i < x.dim(); ++i)
        gap = std::max(gap, std::abs(x.vertex(s)[i] - x.vertex(t)[i]));
      if (gap > tol) ++violations;
    }
  }
  return violations;
}

namespace {

std::vector<double> random_direction(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(dim);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& c : v) {
      c = normal(rng);
      norm += c * c;
    }
  } while (norm < 1e-6);
  norm = std::sqrt(norm);
  for (double& c : v) c /= norm;
  return v;
}

struct TreeNode {
  std::vector<double> position;
  std::size_t parent;
  std::vector<std::size_t> children;
};

}  // namespace

PolyPath sample_tree_like(std::uint64_t seed, std::size_t n_moves, std::size_t dim) {
  if (dim == 0) throw ValidationError("sample_tree_like: dimension must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> edge_length(0.2, 1.5);

  std::vector<TreeNode> tree;
  tree.push_back({std::vector<double>(dim, 0.0), 0, {}});
  std::size_t at = 0;
  std::vector<double> coords = tree[0].position;

  auto step_to = [&](std::size_t node) {
    at = node;
    coords.insert(coords.end(), tree[node].position.begin(), tree[node].position.end());
  };

  for (std::size_t move = 0; move < n_moves; ++move) {
    const bool push = at == 0 || unit(rng) < 0.55;
    if (!push) {
      step_to(tree[at].parent);
      continue;
    }
    const auto& kids = tree[at].children;
    if (!kids.empty() && unit(rng) < 0.3) {
      std::uniform_int_distribution<std::size_t> pick(0, kids.size() - 1);
      step_to(kids[pick(rng)]);
      continue;
    }
    std::vector<double> pos = tree[at].position;
    const std::vector<double> dir = random_direction(rng, dim);
    const double len = edge_length(rng);
    for (std::size_t i = 0; i < dim; ++i) pos[i] += len * dir[i];
    tree.push_back({std::move(pos), at, {}});
    tree[at].children.push_back(tree.size() - 1);
    step_to(tree.size() - 1);
  }
  while (at != 0) step_to(tree[at].parent);
  return PolyPath(dim, std::move(coords));
}

PolyPath sample_reduced(std::mt19937_64& rng, std::size_t segments, std::size_t dim) {
  std::uniform_real_distribution<double> length(0.5, 1.5);
  std::vector<double> coords(dim, 0.0);
  std::vector<double> prev;
  for (std::size_t s = 0; s < segments; ++s) {
    std::vector<double> dir;
    // Consecutive directions must be far from collinear.
    do {
      dir = random_direction(rng, dim);
    } while (!prev.empty() && dim > 1 &&
             std::abs(ScalarOps<double>::dot(dir, prev)) > 0.95);
    if (dim == 1 && !prev.empty()) dir[0] = prev[0];  // only one direction class exists
    const double len = length(rng);
    const std::size_t base = coords.size() - dim;
    for (std::size_t i = 0; i < dim; ++i) coords.push_back(coords[base + i] + len * dir[i]);
    prev = dir;
  }
  PolyPath path(dim, std::move(coords));
  return dim == 1 ? normalize(path) : path;
}

PolyPath insert_spurs(const PolyPath& x, std::size_t count, std::mt19937_64& rng) {
  const std::size_t dim = x.dim();
  std::vector<std::vector<double>> v;
  for (std::size_t k = 0; k < x.size(); ++k) v.emplace_back(x.vertex(k).begin(), x.vertex(k).end());

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> spur_length(0.1, 1.0);
  for (std::size_t c = 0; c < count; ++c) {
    std::size_t at;
    if (v.size() > 1 && unit(rng) < 0.5) {
      // split segment `seg` at an interior point
      std::uniform_int_distribution<std::size_t> pick(0, v.size() - 2);
      const std::size_t seg = pick(rng);
      const double f = 0.2 + 0.6 * unit(rng);
      std::vector<double> mid(dim);
      for (std::size_t i = 0; i < dim; ++i) mid[i] = v[seg][i] + f * (v[seg + 1][i] - v[seg][i]);
      v.insert(v.begin() + static_cast<std::ptrdiff_t>(seg + 1), mid);
      at = seg + 1;
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, v.size() - 1);
      at = pick(rng);
    }
    const std::vector<double> base = v[at];
    std::vector<std::vector<double>> excursion;
    if (unit(rng) < 0.5) {
      const std::vector<double> dir = random_direction(rng, dim);
      const double len = spur_length(rng);
      std::vector<double> tip = base;
      for (std::size_t i = 0; i < dim; ++i) tip[i] += len * dir[i];
      excursion.push_back(std::move(tip));
      excursion.push_back(base);
    } else {
      std::uniform_int_distribution<std::size_t> moves(1, 6);
      const PolyPath walk = sample_tree_like(rng(), moves(rng), dim);
      for (std::size_t k = 1; k < walk.size(); ++k) {
        std::vector<double> p = base;
        for (std::size_t i = 0; i < dim; ++i) p[i] += walk.vertex(k)[i];
        excursion.push_back(std::move(p));
      }
      excursion.back() = base;  // close exactly
    }
    v.insert(v.begin() + static_cast<std::ptrdiff_t>(at + 1), excursion.begin(), excursion.end());
  }
  return PolyPath::from_vertices(v);
}

}  // namespace sigtree
