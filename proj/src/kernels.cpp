#include "sigtree/kernels.hpp"

#include <omp.h>

#include <optional>

#include "sigtree/errors.hpp"
#include "sigtree/paths.hpp"
#include "sigtree/signature.hpp"

namespace sigtree::kernels {

namespace serial {

TensorSeries tensor_mul(const TensorSeries& a, const TensorSeries& b) {
  require_compatible(a, b, "tensor_mul");
  TensorSeries out(a.dim(), a.depth());
  for (int n = 0; n <= a.depth(); ++n) {
    auto dst = out.level(n);
    for (int k = 0; k <= n; ++k) {
      const auto left = a.level(k);
      const auto right = b.level(n - k);
      std::size_t idx = 0;
      for (double l : left) {
        if (l == 0.0) {
          idx += right.size();
          continue;
        }
        for (double r : right) dst[idx++] += l * r;
      }
    }
  }
  return out;
}

std::vector<GroupElement> signatures(std::span<const PolyPath> paths, int depth) {
  std::vector<GroupElement> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back(sig(p, depth));
  return out;
}

DistanceMatrix pairwise_distances(std::size_t n,
                                  const std::function<double(std::size_t, std::size_t)>& dist) {
  DistanceMatrix m{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m.values[i * n + j] = m.values[j * n + i] = dist(i, j);
  return m;
}

}  // namespace serial

namespace parallel {

TensorSeries tensor_mul(const TensorSeries& a, const TensorSeries& b) {
  require_compatible(a, b, "tensor_mul");
  const int dim = a.dim();
  const int depth = a.depth();
  if (level_size(dim, depth) < kMinParallelLevel) return serial::tensor_mul(a, b);
  TensorSeries out(dim, depth);
  std::vector<std::size_t> sizes(static_cast<std::size_t>(depth) + 1);
  std::vector<const double*> left(static_cast<std::size_t>(depth) + 1);
  std::vector<const double*> right(static_cast<std::size_t>(depth) + 1);
  for (int n = 0; n <= depth; ++n) {
    const auto un = static_cast<std::size_t>(n);
    sizes[un] = level_size(dim, n);
    left[un] = a.level(n).data();
    right[un] = b.level(n).data();
  }

  // Output level n is cut into dim^q chunks by its first q letters. Chunk c
  // only receives left rows and right columns whose leading letters match c,
  // so chunks are written independently with the serial scatter loop.
  for (int n = 0; n <= depth; ++n) {
    double* dst = out.level(n).data();
    int q = 0;
    while (q < n && sizes[static_cast<std::size_t>(q)] < 32) ++q;
    const auto chunks = static_cast<long long>(sizes[static_cast<std::size_t>(q)]);
    const std::size_t tail = sizes[static_cast<std::size_t>(n - q)];
#pragma omp parallel for schedule(static) if (sizes[static_cast<std::size_t>(n)] >= kMinParallelLevel)
    for (long long c = 0; c < chunks; ++c) {
      const auto pfx = static_cast<std::size_t>(c);
      double* chunk = dst + pfx * tail;
      for (int k = 0; k <= n; ++k) {
        const double* lk = left[static_cast<std::size_t>(k)];
        const double* rk = right[static_cast<std::size_t>(n - k)];
        if (k < q) {
          // the prefix fixes the left index; right covers one tail block
          const std::size_t split = sizes[static_cast<std::size_t>(q - k)];
          const double lv = lk[pfx / split];
          if (lv == 0.0) continue;
          const double* rb = rk + (pfx % split) * tail;
          for (std::size_t r = 0; r < tail; ++r) chunk[r] += lv * rb[r];
        } else {
          const std::size_t rows = sizes[static_cast<std::size_t>(k - q)];
          const std::size_t rn = sizes[static_cast<std::size_t>(n - k)];
          const double* lb = lk + pfx * rows;
          for (std::size_t l = 0; l < rows; ++l) {
            const double lv = lb[l];
            if (lv == 0.0) continue;
            for (std::size_t r = 0; r < rn; ++r) chunk[l * rn + r] += lv * rk[r];
          }
        }
      }
    }
  }
  return out;
}

std::vector<GroupElement> signatures(std::span<const PolyPath> paths, int depth) {
  if (depth < 1) throw ValidationError("signature depth must be at least 1");
  std::vector<std::optional<GroupElement>> slots(paths.size());
  const auto count = static_cast<long long>(paths.size());
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) slots[static_cast<std::size_t>(i)].emplace(sig(paths[static_cast<std::size_t>(i)], depth));
  std::vector<GroupElement> out;
  out.reserve(paths.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

DistanceMatrix pairwise_distances(std::size_t n,
                                  const std::function<double(std::size_t, std::size_t)>& dist) {
  DistanceMatrix m{n, std::vector<double>(n * n, 0.0)};
  // rows shrink towards the bottom, hence the dynamic schedule
#pragma omp parallel for schedule(dynamic, 4)
  for (long long row = 0; row < static_cast<long long>(n); ++row) {
    const auto i = static_cast<std::size_t>(row);
    for (std::size_t j = i + 1; j < n; ++j) m.values[i * n + j] = dist(i, j);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) m.values[i * n + j] = m.values[j * n + i];
  return m;
}

}  // namespace parallel

int max_threads() { return omp_get_max_threads(); }

}  // namespace sigtree::kernels
