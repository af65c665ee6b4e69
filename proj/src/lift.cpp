#include "sigtree/lift.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

#include "sigtree/errors.hpp"
#include "sigtree/signature.hpp"

namespace sigtree {

// ------------------------------------------------------------ GradedSpace

GradedSpace::GradedSpace(int base_dim, int truncation)
    : base_dim_(base_dim), truncation_(truncation), flat_dim_(0) {
  if (base_dim < 1) throw ValidationError("graded space: base dimension must be positive");
  if (truncation < 1) throw ValidationError("graded space: truncation must be at least 1");
  offsets_.assign(static_cast<std::size_t>(truncation) + 2, 0);
  for (int i = 1; i <= truncation; ++i)
    offsets_[static_cast<std::size_t>(i) + 1] = offsets_[static_cast<std::size_t>(i)] + level_size(base_dim, i);
  flat_dim_ = static_cast<int>(offsets_.back());
}

std::size_t GradedSpace::flat_index(int level, std::size_t word_index) const {
  if (level < 1 || level > truncation_) throw ValidationError("graded space: level out of range");
  return offsets_[static_cast<std::size_t>(level)] + word_index;
}

std::pair<int, std::size_t> GradedSpace::split(std::size_t flat) const {
  for (int i = 1; i <= truncation_; ++i) {
    if (flat < offsets_[static_cast<std::size_t>(i) + 1]) return {i, flat - offsets_[static_cast<std::size_t>(i)]};
  }
  throw ValidationError("graded space: flat index out of range");
}

std::vector<double> GradedSpace::flatten(const TensorSeries& s) const {
  if (s.dim() != base_dim_ || s.depth() < truncation_) {
    throw IncompatibleOperands("graded space: series shape does not cover the truncation");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(flat_dim_));
  for (int i = 1; i <= truncation_; ++i) {
    const auto level = s.level(i);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

// ------------------------------------------------------------- MultiIndex

int MultiIndex::total() const { return std::accumulate(entries.begin(), entries.end(), 0); }

std::string MultiIndex::to_string() const {
  std::string out = "(";
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(entries[k]);
  }
  return out + ")";
}

std::vector<MultiIndex> multi_indices(int n, int truncation) {
  std::vector<MultiIndex> out;
  if (n < 1) return out;
  std::vector<int> e(static_cast<std::size_t>(n), 1);
  while (true) {
    out.emplace_back(e);
    int k = n - 1;
    while (k >= 0 && e[static_cast<std::size_t>(k)] == truncation) e[static_cast<std::size_t>(k--)] = 1;
    if (k < 0) break;
    ++e[static_cast<std::size_t>(k)];
  }
  return out;
}

// -------------------------------------------------------- ordered shuffles

namespace {

void validate_blocks(const std::vector<int>& sizes) {
  if (sizes.empty()) throw ValidationError("ordered shuffles need at least one block");
  for (int j : sizes)
    if (j < 1) throw ValidationError("ordered shuffle block sizes must be positive");
}

// Every assignment of time ranks to positions that increases inside blocks,
// as label sequences: seq[t] is the block occupying time rank t.
template <class Visit>
void enumerate_label_sequences(std::vector<int>& remaining, std::vector<int>& seq, std::size_t total,
                               Visit&& visit) {
  if (seq.size() == total) {
    visit(seq);
    return;
  }
  for (std::size_t b = 0; b < remaining.size(); ++b) {
    if (remaining[b] == 0) continue;
    --remaining[b];
    seq.push_back(static_cast<int>(b));
    enumerate_label_sequences(remaining, seq, total, visit);
    seq.pop_back();
    ++remaining[b];
  }
}

std::vector<int> ranks_from_sequence(const std::vector<int>& seq, const std::vector<int>& sizes) {
  std::vector<int> offsets(sizes.size(), 0);
  for (std::size_t b = 1; b < sizes.size(); ++b) offsets[b] = offsets[b - 1] + sizes[b - 1];
  std::vector<int> seen(sizes.size(), 0);
  std::vector<int> ranks(seq.size());
  for (std::size_t t = 0; t < seq.size(); ++t) {
    const auto b = static_cast<std::size_t>(seq[t]);
    ranks[static_cast<std::size_t>(offsets[b] + seen[b]++)] = static_cast<int>(t);
  }
  return ranks;
}

std::vector<std::vector<int>> interleavings(const std::vector<int>& sizes, bool ordered_ends) {
  validate_blocks(sizes);
  const auto total = static_cast<std::size_t>(std::accumulate(sizes.begin(), sizes.end(), 0));
  std::vector<int> remaining = sizes;
  std::vector<int> seq;
  std::vector<std::vector<int>> out;
  enumerate_label_sequences(remaining, seq, total, [&](const std::vector<int>& s) {
    if (ordered_ends) {
      // time rank of the last letter of each block
      std::vector<int> last(sizes.size(), -1);
      for (std::size_t t = 0; t < s.size(); ++t) last[static_cast<std::size_t>(s[t])] = static_cast<int>(t);
      for (std::size_t b = 1; b < last.size(); ++b)
        if (last[b] < last[b - 1]) return;
    }
    out.push_back(ranks_from_sequence(s, sizes));
  });
  return out;
}

}  // namespace

std::vector<std::vector<int>> block_interleavings(const std::vector<int>& block_sizes) {
  return interleavings(block_sizes, false);
}

const OrderedShuffleSet& ordered_shuffles(const std::vector<int>& block_sizes) {
  static std::mutex mutex;
  static std::map<std::vector<int>, OrderedShuffleSet> cache;
  validate_blocks(block_sizes);
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(block_sizes);
  if (it == cache.end()) {
    it = cache.emplace(block_sizes, OrderedShuffleSet{block_sizes, interleavings(block_sizes, true)}).first;
  }
  return it->second;
}

// ------------------------------------------------------ tensor operations

namespace {

void check_tensor(const HomogeneousTensor& t, int dim, const char* what) {
  if (t.degree < 0 || t.values.size() != level_size(dim, t.degree)) {
    throw ValidationError(std::string(what) + ": tensor of degree " + std::to_string(t.degree) +
                          " must hold " + std::to_string(level_size(dim, std::max(t.degree, 0))) +
                          " values");
  }
}

HomogeneousTensor level_of(const TensorSeries& s, int n) {
  const auto l = s.level(n);
  return HomogeneousTensor{n, std::vector<double>(l.begin(), l.end())};
}

}  // namespace

HomogeneousTensor permute(const HomogeneousTensor& x, const std::vector<int>& ranks, int dim) {
  check_tensor(x, dim, "permute");
  const int degree = x.degree;
  if (ranks.size() != static_cast<std::size_t>(degree)) {
    throw ValidationError("permute: permutation length differs from tensor degree");
  }
  const auto d = static_cast<std::size_t>(dim);
  // stride in x of the letter at position p
  std::vector<std::size_t> stride(ranks.size());
  for (std::size_t p = 0; p < ranks.size(); ++p)
    stride[p] = level_size(dim, degree - 1 - ranks[p]);

  HomogeneousTensor out{degree, std::vector<double>(x.values.size(), 0.0)};
  std::vector<std::size_t> letters(ranks.size(), 0);
  for (std::size_t idx = 0; idx < out.values.size(); ++idx) {
    std::size_t src = 0;
    for (std::size_t p = 0; p < letters.size(); ++p) src += letters[p] * stride[p];
    out.values[idx] = x.values[src];
    for (std::size_t p = letters.size(); p-- > 0;) {
      if (++letters[p] < d) break;
      letters[p] = 0;
    }
  }
  return out;
}

HomogeneousTensor ordered_shuffle_sum(const HomogeneousTensor& x, const OrderedShuffleSet& set,
                                      int dim) {
  HomogeneousTensor out{x.degree, std::vector<double>(x.values.size(), 0.0)};
  for (const auto& ranks : set.ranks) {
    const HomogeneousTensor p = permute(x, ranks, dim);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += p.values[i];
  }
  return out;
}

HomogeneousTensor f_embed(int dim, const std::vector<HomogeneousTensor>& prefixes,
                          const HomogeneousTensor& body, const std::vector<int>& block_sizes) {
  if (prefixes.size() != block_sizes.size()) {
    throw ValidationError("f_embed: one prefix per body block required");
  }
  const int body_degree = std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
  if (body.degree != body_degree) {
    throw ValidationError("f_embed: body degree " + std::to_string(body.degree) +
                          " does not match block sizes summing to " + std::to_string(body_degree));
  }
  check_tensor(body, dim, "f_embed body");
  int degree = body_degree;
  for (const auto& v : prefixes) {
    check_tensor(v, dim, "f_embed prefix");
    degree += v.degree;
  }

  const auto d = static_cast<std::size_t>(dim);
  HomogeneousTensor out{degree, std::vector<double>(level_size(dim, degree), 0.0)};
  std::vector<std::size_t> letters(static_cast<std::size_t>(degree), 0);
  for (std::size_t idx = 0; idx < out.values.size(); ++idx) {
    double coeff = 1.0;
    std::size_t body_index = 0;
    std::size_t pos = 0;
    for (std::size_t k = 0; k < prefixes.size() && coeff != 0.0; ++k) {
      std::size_t prefix_index = 0;
      for (int i = 0; i < prefixes[k].degree; ++i) prefix_index = prefix_index * d + letters[pos++];
      coeff *= prefixes[k].values[prefix_index];
      for (int i = 0; i < block_sizes[k]; ++i) body_index = body_index * d + letters[pos++];
    }
    if (coeff != 0.0) out.values[idx] = coeff * body.values[body_index];
    for (std::size_t p = letters.size(); p-- > 0;) {
      if (++letters[p] < d) break;
      letters[p] = 0;
    }
  }
  return out;
}

// ------------------------------------------------------------------- lift

namespace {

// Block (i_1..i_n) at base point s: sum over j_k in 1..i_k of
// F_j(X_{0,s}^{i-j})[sum_{OS(j)} sigma(X_{s,t}^{|j|})].
HomogeneousTensor lift_block_value(const TensorSeries& prefix, const TensorSeries& increment,
                                   const MultiIndex& index) {
  const int dim = increment.dim();
  const std::size_t n = index.entries.size();
  HomogeneousTensor total{index.total(), std::vector<double>(level_size(dim, index.total()), 0.0)};
  std::vector<int> j(n, 1);
  while (true) {
    const int body_degree = std::accumulate(j.begin(), j.end(), 0);
    const HomogeneousTensor body =
        ordered_shuffle_sum(level_of(increment, body_degree), ordered_shuffles(j), dim);
    std::vector<HomogeneousTensor> prefixes;
    prefixes.reserve(n);
    for (std::size_t k = 0; k < n; ++k) prefixes.push_back(level_of(prefix, index.entries[k] - j[k]));
    const HomogeneousTensor term = f_embed(dim, prefixes, body, j);
    for (std::size_t i = 0; i < total.values.size(); ++i) total.values[i] += term.values[i];

    std::size_t k = n;
    while (k-- > 0) {
      if (j[k] < index.entries[k]) {
        ++j[k];
        break;
      }
      j[k] = 1;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return total;
}

// Position inside level n of the lifted series for block `index` and
// block-local coefficient `b`.
std::size_t lifted_position(const GradedSpace& space, const MultiIndex& index, std::size_t b) {
  const std::size_t n = index.entries.size();
  std::vector<std::size_t> letters(n);
  for (std::size_t k = n; k-- > 0;) {
    const std::size_t block = level_size(space.base_dim(), index.entries[k]);
    letters[k] = space.flat_index(index.entries[k], b % block);
    b /= block;
  }
  std::size_t pos = 0;
  for (std::size_t a : letters) pos = pos * static_cast<std::size_t>(space.flat_dim()) + a;
  return pos;
}

GradedSpace check_budget(int dim, int truncation, int level) {
  const GradedSpace space(dim, truncation);
  const double required = std::pow(static_cast<double>(space.flat_dim()), level);
  if (required > kLiftCoefficientBudget) {
    throw ValidationError("lift: level " + std::to_string(level) + " over " +
                          std::to_string(space.flat_dim()) + " letters needs " +
                          std::to_string(static_cast<long long>(required)) +
                          " coefficients, budget is " +
                          std::to_string(static_cast<long long>(kLiftCoefficientBudget)));
  }
  return space;
}

}  // namespace

GroupElement lift_signature_between(const TensorSeries& prefix, const TensorSeries& increment,
                                    int truncation, int level) {
  if (truncation < 1 || level < 1) throw ValidationError("lift: truncation and level must be >= 1");
  const int dim = increment.dim();
  if (prefix.dim() != dim) throw IncompatibleOperands("lift: prefix and increment dimensions differ");
  if (increment.depth() < truncation * level) {
    throw ValidationError("lift: increment signature needs depth " +
                          std::to_string(truncation * level));
  }
  if (prefix.depth() < truncation - 1) {
    throw ValidationError("lift: prefix signature needs depth " + std::to_string(truncation - 1));
  }
  const GradedSpace space = check_budget(dim, truncation, level);

  TensorSeries out = TensorSeries::identity(space.flat_dim(), level);
  for (int n = 1; n <= level; ++n) {
    const std::vector<MultiIndex> indices = multi_indices(n, truncation);
    for (const auto& idx : indices) ordered_shuffles(idx.entries);  // warm the cache
    double* dst = out.level(n).data();
    const auto count = static_cast<long long>(indices.size());
#pragma omp parallel for schedule(dynamic)
    for (long long m = 0; m < count; ++m) {
      const MultiIndex& idx = indices[static_cast<std::size_t>(m)];
      const HomogeneousTensor block = lift_block_value(prefix, increment, idx);
      for (std::size_t b = 0; b < block.values.size(); ++b)
        dst[lifted_position(space, idx, b)] = block.values[b];
    }
  }
  return GroupElement(std::move(out));
}

GroupElement lift_signature(const PolyPath& x, int truncation, int level) {
  if (truncation < 1 || level < 1) throw ValidationError("lift: truncation and level must be >= 1");
  const int dim = static_cast<int>(x.dim());
  check_budget(dim, truncation, level);
  return lift_signature_between(TensorSeries::identity(dim, truncation),
                                sig(x, truncation * level), truncation, level);
}

GroupElement lift_signature_on(const PolyPath& x, std::size_t from, std::size_t to, int truncation,
                               int level) {
  if (from > to || to >= x.size()) throw ValidationError("lift: vertex range out of bounds");
  if (truncation < 1 || level < 1) throw ValidationError("lift: truncation and level must be >= 1");
  check_budget(static_cast<int>(x.dim()), truncation, level);
  const PolyPath piece = x.suffix(from).prefix(to - from);
  return lift_signature_between(sig(x.prefix(from), truncation), sig(piece, truncation * level),
                                truncation, level);
}

std::vector<double> lift_block(const TensorSeries& lifted, const GradedSpace& space,
                               const MultiIndex& index) {
  const int n = static_cast<int>(index.entries.size());
  if (n < 1 || n > lifted.depth() || lifted.dim() != space.flat_dim()) {
    throw ValidationError("lift_block: block " + index.to_string() + " not present");
  }
  for (int e : index.entries)
    if (e < 1 || e > space.truncation()) throw ValidationError("lift_block: entry out of range");
  const auto level = lifted.level(n);
  std::vector<double> out(level_size(space.base_dim(), index.total()));
  for (std::size_t b = 0; b < out.size(); ++b) out[b] = level[lifted_position(space, index, b)];
  return out;
}

std::map<std::string, std::vector<double>> lift_blocks(const TensorSeries& lifted,
                                                       const GradedSpace& space) {
  std::map<std::string, std::vector<double>> out;
  for (int n = 1; n <= lifted.depth(); ++n)
    for (const auto& idx : multi_indices(n, space.truncation()))
      out.emplace(idx.to_string(), lift_block(lifted, space, idx));
  return out;
}

PolyPath lift_path_oracle(const PolyPath& x, int truncation, std::size_t mesh) {
  if (mesh < 2) throw ValidationError("lift oracle: mesh must be at least 2");
  const GradedSpace space(static_cast<int>(x.dim()), truncation);
  const GroupPath prefixes = sig_prefix_path(x, truncation);
  const double t0 = x.time(0);
  const double t1 = x.time(x.size() - 1);
  const std::vector<double>& times = prefixes.times();

  std::vector<double> coords;
  coords.reserve((mesh + 1) * static_cast<std::size_t>(space.flat_dim()));
  for (std::size_t i = 0; i <= mesh; ++i) {
    const double t = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(mesh);
    std::vector<double> sample;
    if (x.size() == 1) {
      sample = space.flatten(prefixes[0]);
    } else {
      auto it = std::upper_bound(times.begin(), times.end(), t);
      std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - times.begin()) - 1));
      k = std::min(k, x.segment_count() - 1);
      const double lambda = (t - times[k]) / (times[k + 1] - times[k]);
      std::vector<double> v = x.increment(k);
      for (double& c : v) c *= lambda;
      sample = space.flatten(tensor_mul(prefixes[k], segment_exp(v, truncation)));
    }
    coords.insert(coords.end(), sample.begin(), sample.end());
  }
  return PolyPath(static_cast<std::size_t>(space.flat_dim()), std::move(coords));
}

bool signature_functoriality_check(const PolyPath& x, const PolyPath& y, int truncation, int level,
                                   double tol) {
  const int depth = truncation * level;
  if (distinguishing_level(sig(x, depth), sig(y, depth), tol)) {
    throw PreconditionError("functoriality check: signatures differ up to depth " +
                            std::to_string(depth));
  }
  return max_level_difference(lift_signature(x, truncation, level),
                              lift_signature(y, truncation, level)) <= tol;
}

}  // namespace sigtree
