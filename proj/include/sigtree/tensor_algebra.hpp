#pragma once

// Truncated free tensor algebra T^(N)(R^d), words, the shuffle product and
// the group-like / Lie membership tests.

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace sigtree {

inline constexpr double kDefaultTolerance = 1e-9;

/// Number of coefficients at one tensor level, dim^level.
std::size_t level_size(int dim, int level);

/// A finite sequence of letters in 1..dim. The empty word indexes the
/// scalar part.
struct Word {
  std::vector<int> letters;

  Word() = default;
  Word(std::initializer_list<int> l) : letters(l) {}
  explicit Word(std::vector<int> l) : letters(std::move(l)) {}

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }

  /// Concatenation u·w.
  Word operator+(const Word& other) const;

  auto operator<=>(const Word&) const = default;
  bool operator==(const Word&) const = default;
};

/// Position of `w` inside its level's lexicographic coefficient array.
std::size_t word_index(const Word& w, int dim);
/// Inverse of word_index.
Word word_from_index(std::size_t index, int level, int dim);

/// Finite linear combination of words; zero coefficients are dropped.
class WordSum {
 public:
  WordSum() = default;
  WordSum(std::initializer_list<std::pair<const Word, double>> terms);

  void add(const Word& w, double coefficient);
  WordSum& operator+=(const WordSum& other);
  WordSum operator*(double scale) const;

  /// Right-multiplies every word by `w` (concatenation on the right).
  WordSum append(const Word& w) const;

  double coefficient(const Word& w) const;
  const std::map<Word, double>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  std::size_t max_length() const;

  bool operator==(const WordSum&) const = default;

 private:
  std::map<Word, double> terms_;
};

/// Shuffle product of two words: every interleaving that preserves the
/// internal order of both, counted with multiplicity.
WordSum shuffle(const Word& u, const Word& w);
/// Bilinear extension of `shuffle`.
WordSum shuffle(const WordSum& a, const WordSum& b);

/// Element of T^(N)(R^d). Level n holds d^n coefficients in lexicographic
/// word order, letters 1..d.
class TensorSeries {
 public:
  /// Zero series.
  TensorSeries(int dim, int depth);
  /// Validates level lengths; throws ValidationError on mismatch.
  TensorSeries(int dim, int depth, std::vector<std::vector<double>> levels);

  static TensorSeries identity(int dim, int depth);
  /// Series concentrated on level 1.
  static TensorSeries from_vector(std::span<const double> v, int depth);

  int dim() const { return dim_; }
  int depth() const { return depth_; }

  std::span<const double> level(int n) const { return levels_.at(n); }
  std::span<double> level(int n) { return levels_.at(n); }
  const std::vector<std::vector<double>>& levels() const { return levels_; }

  double scalar() const { return levels_[0][0]; }

  double operator[](const Word& w) const;
  double& operator[](const Word& w);

  TensorSeries& operator+=(const TensorSeries& other);
  TensorSeries& operator-=(const TensorSeries& other);
  TensorSeries& operator*=(double scale);
  friend TensorSeries operator+(TensorSeries a, const TensorSeries& b) { return a += b; }
  friend TensorSeries operator-(TensorSeries a, const TensorSeries& b) { return a -= b; }
  friend TensorSeries operator*(TensorSeries a, double s) { return a *= s; }
  friend TensorSeries operator*(double s, TensorSeries a) { return a *= s; }

  /// Copy with every level above `depth` dropped (or zero-padded).
  TensorSeries truncated(int depth) const;

  bool operator==(const TensorSeries&) const = default;

 private:
  int dim_;
  int depth_;
  std::vector<std::vector<double>> levels_;
};

/// Truncated product: level n of the result is sum_k a_k (x) b_{n-k}.
TensorSeries tensor_mul(const TensorSeries& a, const TensorSeries& b);

/// exp of a series with zero scalar part, truncated at its depth.
TensorSeries tensor_exp(const TensorSeries& a);
/// log(1 + u) of a series with unit scalar part.
TensorSeries tensor_log(const TensorSeries& g);
/// Multiplicative inverse of a series with unit scalar part.
TensorSeries tensor_inverse(const TensorSeries& g);

/// Signature of a single straight segment with increment v: exp(v).
TensorSeries segment_exp(std::span<const double> v, int depth);

/// Group-like element: unit scalar part, coefficients satisfying the shuffle
/// identity. Only the scalar part is checked on construction; use
/// is_group_like for the full test.
class GroupElement {
 public:
  explicit GroupElement(TensorSeries series);
  static GroupElement identity(int dim, int depth);

  const TensorSeries& series() const { return series_; }
  operator const TensorSeries&() const { return series_; }  // NOLINT
  int dim() const { return series_.dim(); }
  int depth() const { return series_.depth(); }
  double operator[](const Word& w) const { return series_[w]; }

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    return GroupElement(tensor_mul(a.series_, b.series_));
  }

 private:
  TensorSeries series_;
};

/// Element with zero scalar part, intended to lie in the free Lie algebra.
class LieSeries {
 public:
  explicit LieSeries(TensorSeries series);

  const TensorSeries& series() const { return series_; }
  operator const TensorSeries&() const { return series_; }  // NOLINT
  int dim() const { return series_.dim(); }
  int depth() const { return series_.depth(); }
  double operator[](const Word& w) const { return series_[w]; }

 private:
  TensorSeries series_;
};

GroupElement group_inverse(const GroupElement& g);
GroupElement group_exp(const LieSeries& a);
LieSeries group_log(const GroupElement& g);

/// Pairing <f, g> = sum_w f_w g_w.
double eval(const TensorSeries& g, const WordSum& f);

/// Checks <u ш w, g> = <u, g><w, g> for all nonempty u, w with
/// |u| + |w| <= depth.
bool is_group_like(const TensorSeries& g, double tol = kDefaultTolerance);

/// Left-normed bracketing [[..[a1,a2],..],an] applied linearly to level n.
std::vector<double> dynkin_bracket_level(std::span<const double> level, int dim, int n);

/// True iff every level n >= 1 is fixed by the Dynkin map divided by n.
bool is_lie(const TensorSeries& a, double tol = kDefaultTolerance);

/// l1 norm of the coefficients of one level.
double level_norm(std::span<const double> level);
/// max_{1<=i<=N} ||pi_i(g)||^{1/i}
double dilation_norm(const TensorSeries& g);
/// max_{1<=i<=N} ||pi_i(a^{-1} b)||^{1/i}
double group_distance(const TensorSeries& a, const TensorSeries& b);

/// Largest per-level l1 deviation between two series of equal shape.
double max_level_difference(const TensorSeries& a, const TensorSeries& b);

void require_compatible(const TensorSeries& a, const TensorSeries& b, const char* op);

}  // namespace sigtree
