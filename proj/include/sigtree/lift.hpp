#pragma once

// The canonical lift: the truncated signature path t -> S_N(x)_{0,t} viewed
// as a path in W = V + V^2 + ... + V^N, and its own signature computed
// combinatorially from the signature of x.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sigtree/paths.hpp"
#include "sigtree/tensor_algebra.hpp"

namespace sigtree {

/// W = V + V^(x)2 + ... + V^(x)N flattened level-major, lexicographic within
/// each level. Flat letters are 0-based here; as tensor letters they are
/// 1..D.
class GradedSpace {
 public:
  GradedSpace(int base_dim, int truncation);

  int base_dim() const { return base_dim_; }
  int truncation() const { return truncation_; }
  int flat_dim() const { return flat_dim_; }

  /// Flat coordinate of V-word `word_index` on `level` (1..N).
  std::size_t flat_index(int level, std::size_t word_index) const;
  /// Inverse of flat_index.
  std::pair<int, std::size_t> split(std::size_t flat) const;

  /// Levels 1..N of s as a vector in R^D.
  std::vector<double> flatten(const TensorSeries& s) const;

 private:
  int base_dim_;
  int truncation_;
  int flat_dim_;
  std::vector<std::size_t> offsets_;  // offsets_[i] = start of level i
};

/// Block index (i_1, ..., i_n) of W^(x)n, entries in 1..N.
struct MultiIndex {
  std::vector<int> entries;

  MultiIndex() = default;
  MultiIndex(std::initializer_list<int> e) : entries(e) {}
  explicit MultiIndex(std::vector<int> e) : entries(std::move(e)) {}

  int total() const;
  std::string to_string() const;  // "(i1,...,in)"
  auto operator<=>(const MultiIndex&) const = default;
};

/// All multi-indices of length n with entries in 1..N, lexicographic.
std::vector<MultiIndex> multi_indices(int n, int truncation);

/// Ordered shuffles for block sizes (j_1, ..., j_n). A member assigns to
/// each of the j_1 + ... + j_n positions a time rank (0-based); ranks
/// increase inside each block and the last ranks of the blocks increase
/// from block to block.
struct OrderedShuffleSet {
  std::vector<int> block_sizes;
  std::vector<std::vector<int>> ranks;

  std::size_t size() const { return ranks.size(); }
};

/// Enumerated once per block profile and cached (thread-safe).
const OrderedShuffleSet& ordered_shuffles(const std::vector<int>& block_sizes);

/// Block-order-preserving interleavings: ranks increase inside each block,
/// no constraint across blocks. The superset ordered_shuffles filters.
std::vector<std::vector<int>> block_interleavings(const std::vector<int>& block_sizes);

/// Dense homogeneous tensor of one degree over R^dim.
struct HomogeneousTensor {
  int degree = 0;
  std::vector<double> values;
};

/// sigma(X): the coefficient of word w is X at the word whose letter at
/// position ranks[p] is w[p].
HomogeneousTensor permute(const HomogeneousTensor& x, const std::vector<int>& ranks, int dim);

/// Sum over an ordered shuffle set of permute(x, sigma).
HomogeneousTensor ordered_shuffle_sum(const HomogeneousTensor& x, const OrderedShuffleSet& set,
                                      int dim);

/// F_{m_1..m_n}(v_1..v_n)[w]: interleaves prefix v_k in front of the k-th
/// body block (of size block_sizes[k]).
HomogeneousTensor f_embed(int dim, const std::vector<HomogeneousTensor>& prefixes,
                          const HomogeneousTensor& body, const std::vector<int>& block_sizes);

/// Largest lift computed, in coefficients of the top level D^M.
inline constexpr double kLiftCoefficientBudget = 1e7;

/// Signature of the lifted path on [s, t] given X_{0,s} (prefix, depth at
/// least N - 1) and X_{s,t} (increment, depth at least N*M). Result lives
/// over the flat alphabet of GradedSpace(dim, N) with depth M.
GroupElement lift_signature_between(const TensorSeries& prefix, const TensorSeries& increment,
                                    int truncation, int level);

/// Signature of t -> S_N(x)_{0,t} over the whole path, depth M.
GroupElement lift_signature(const PolyPath& x, int truncation, int level);

/// Same on the vertex range [from, to].
GroupElement lift_signature_on(const PolyPath& x, std::size_t from, std::size_t to, int truncation,
                               int level);

/// Coefficients of block (i_1..i_n) of a lifted signature, in lexicographic
/// order of the concatenated V-word.
std::vector<double> lift_block(const TensorSeries& lifted, const GradedSpace& space,
                               const MultiIndex& index);

/// All blocks keyed by "(i1,...,in)".
std::map<std::string, std::vector<double>> lift_blocks(const TensorSeries& lifted,
                                                       const GradedSpace& space);

/// Polyline through S_N(x)_{0,t} (levels 1..N flattened) at mesh + 1
/// uniform times from the first to the last vertex time.
PolyPath lift_path_oracle(const PolyPath& x, int truncation, std::size_t mesh);

/// Requires sig(x, N*M) = sig(y, N*M) within tol (PreconditionError
/// otherwise); returns whether the lifted signatures agree within tol.
bool signature_functoriality_check(const PolyPath& x, const PolyPath& y, int truncation, int level,
                                   double tol = kDefaultTolerance);

}  // namespace sigtree
