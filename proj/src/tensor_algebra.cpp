#include "sigtree/tensor_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "sigtree/errors.hpp"
#include "sigtree/kernels.hpp"

namespace sigtree {

std::size_t level_size(int dim, int level) {
  std::size_t size = 1;
  for (int i = 0; i < level; ++i) size *= static_cast<std::size_t>(dim);
  return size;
}

Word Word::operator+(const Word& other) const {
  Word out = *this;
  out.letters.insert(out.letters.end(), other.letters.begin(), other.letters.end());
  return out;
}

std::size_t word_index(const Word& w, int dim) {
  std::size_t index = 0;
  for (int letter : w.letters) {
    if (letter < 1 || letter > dim) {
      throw ValidationError("letter " + std::to_string(letter) + " outside alphabet 1.." +
                            std::to_string(dim));
    }
    index = index * static_cast<std::size_t>(dim) + static_cast<std::size_t>(letter - 1);
  }
  return index;
}

Word word_from_index(std::size_t index, int level, int dim) {
  std::vector<int> letters(static_cast<std::size_t>(level));
  for (int k = level - 1; k >= 0; --k) {
    letters[static_cast<std::size_t>(k)] = static_cast<int>(index % static_cast<std::size_t>(dim)) + 1;
    index /= static_cast<std::size_t>(dim);
  }
  return Word(std::move(letters));
}

// ---------------------------------------------------------------- WordSum

WordSum::WordSum(std::initializer_list<std::pair<const Word, double>> terms) {
  for (const auto& [w, c] : terms) add(w, c);
}

void WordSum::add(const Word& w, double coefficient) {
  if (coefficient == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(w, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0.0) terms_.erase(it);
  }
}

WordSum& WordSum::operator+=(const WordSum& other) {
  for (const auto& [w, c] : other.terms_) add(w, c);
  return *this;
}

WordSum WordSum::operator*(double scale) const {
  WordSum out;
  for (const auto& [w, c] : terms_) out.add(w, c * scale);
  return out;
}

WordSum WordSum::append(const Word& w) const {
  WordSum out;
  for (const auto& [u, c] : terms_) out.add(u + w, c);
  return out;
}

double WordSum::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? 0.0 : it->second;
}

std::size_t WordSum::max_length() const {
  std::size_t m = 0;
  for (const auto& [w, c] : terms_) m = std::max(m, w.size());
  return m;
}

namespace {

// Interleavings of u[0..i) and w[0..j), each followed by the reversed
// letters in `buffer`, accumulated into `out`.
void shuffle_into(const Word& u, std::size_t i, const Word& w, std::size_t j,
                  std::vector<int>& buffer, std::map<Word, double>& out) {
  if (i == 0 || j == 0) {
    std::vector<int> letters;
    letters.reserve(i + j + buffer.size());
    const Word& rest = i == 0 ? w : u;
    std::size_t len = i == 0 ? j : i;
    letters.insert(letters.end(), rest.letters.begin(),
                   rest.letters.begin() + static_cast<std::ptrdiff_t>(len));
    letters.insert(letters.end(), buffer.rbegin(), buffer.rend());
    out[Word(std::move(letters))] += 1.0;
    return;
  }
  buffer.push_back(u.letters[i - 1]);
  shuffle_into(u, i - 1, w, j, buffer, out);
  buffer.back() = w.letters[j - 1];
  shuffle_into(u, i, w, j - 1, buffer, out);
  buffer.pop_back();
}

}  // namespace

WordSum shuffle(const Word& u, const Word& w) {
  std::map<Word, double> counts;
  std::vector<int> buffer;
  shuffle_into(u, u.size(), w, w.size(), buffer, counts);
  WordSum out;
  for (const auto& [word, c] : counts) out.add(word, c);
  return out;
}

WordSum shuffle(const WordSum& a, const WordSum& b) {
  WordSum out;
  for (const auto& [u, cu] : a.terms())
    for (const auto& [w, cw] : b.terms()) out += shuffle(u, w) * (cu * cw);
  return out;
}

// ----------------------------------------------------------- TensorSeries

namespace {

// Top levels beyond this many coefficients are refused rather than allocated.
constexpr double kMaxLevelSize = 1e8;

void validate_shape(int dim, int depth) {
  if (dim < 1) throw ValidationError("tensor dimension must be positive");
  if (depth < 1) throw ValidationError("tensor depth must be at least 1");
  if (std::pow(static_cast<double>(dim), depth) > kMaxLevelSize) {
    throw ValidationError("tensor of dimension " + std::to_string(dim) + " and depth " +
                          std::to_string(depth) + " is too large");
  }
}

}  // namespace

TensorSeries::TensorSeries(int dim, int depth) : dim_(dim), depth_(depth) {
  validate_shape(dim, depth);
  levels_.reserve(static_cast<std::size_t>(depth) + 1);
  for (int n = 0; n <= depth; ++n) levels_.emplace_back(level_size(dim, n), 0.0);
}

TensorSeries::TensorSeries(int dim, int depth, std::vector<std::vector<double>> levels)
    : dim_(dim), depth_(depth), levels_(std::move(levels)) {
  validate_shape(dim, depth);
  if (levels_.size() != static_cast<std::size_t>(depth) + 1) {
    throw ValidationError("expected " + std::to_string(depth + 1) + " levels, got " +
                          std::to_string(levels_.size()));
  }
  for (int n = 0; n <= depth; ++n) {
    if (levels_[static_cast<std::size_t>(n)].size() != level_size(dim, n)) {
      throw ValidationError("level " + std::to_string(n) + " must have " +
                            std::to_string(level_size(dim, n)) + " coefficients, got " +
                            std::to_string(levels_[static_cast<std::size_t>(n)].size()));
    }
  }
}

TensorSeries TensorSeries::identity(int dim, int depth) {
  TensorSeries out(dim, depth);
  out.levels_[0][0] = 1.0;
  return out;
}

TensorSeries TensorSeries::from_vector(std::span<const double> v, int depth) {
  TensorSeries out(static_cast<int>(v.size()), depth);
  if (depth >= 1) std::copy(v.begin(), v.end(), out.levels_[1].begin());
  return out;
}

double TensorSeries::operator[](const Word& w) const {
  if (w.size() > static_cast<std::size_t>(depth_)) {
    throw ValidationError("word of length " + std::to_string(w.size()) +
                          " exceeds depth " + std::to_string(depth_));
  }
  return levels_[w.size()][word_index(w, dim_)];
}

double& TensorSeries::operator[](const Word& w) {
  if (w.size() > static_cast<std::size_t>(depth_)) {
    throw ValidationError("word of length " + std::to_string(w.size()) +
                          " exceeds depth " + std::to_string(depth_));
  }
  return levels_[w.size()][word_index(w, dim_)];
}

TensorSeries& TensorSeries::operator+=(const TensorSeries& other) {
  require_compatible(*this, other, "addition");
  for (std::size_t n = 0; n < levels_.size(); ++n)
    for (std::size_t i = 0; i < levels_[n].size(); ++i) levels_[n][i] += other.levels_[n][i];
  return *this;
}

TensorSeries& TensorSeries::operator-=(const TensorSeries& other) {
  require_compatible(*this, other, "subtraction");
  for (std::size_t n = 0; n < levels_.size(); ++n)
    for (std::size_t i = 0; i < levels_[n].size(); ++i) levels_[n][i] -= other.levels_[n][i];
  return *this;
}

TensorSeries& TensorSeries::operator*=(double scale) {
  for (auto& level : levels_)
    for (double& c : level) c *= scale;
  return *this;
}

TensorSeries TensorSeries::truncated(int depth) const {
  TensorSeries out(dim_, depth);
  for (int n = 0; n <= std::min(depth, depth_); ++n)
    out.levels_[static_cast<std::size_t>(n)] = levels_[static_cast<std::size_t>(n)];
  return out;
}

void require_compatible(const TensorSeries& a, const TensorSeries& b, const char* op) {
  if (a.dim() != b.dim() || a.depth() != b.depth()) {
    throw IncompatibleOperands(std::string(op) + ": operands have shape (dim " +
                               std::to_string(a.dim()) + ", depth " + std::to_string(a.depth()) +
                               ") and (dim " + std::to_string(b.dim()) + ", depth " +
                               std::to_string(b.depth()) + ")");
  }
}

// ------------------------------------------------------------- arithmetic

TensorSeries tensor_mul(const TensorSeries& a, const TensorSeries& b) {
  require_compatible(a, b, "tensor_mul");
  return kernels::parallel::tensor_mul(a, b);
}

TensorSeries tensor_exp(const TensorSeries& a) {
  if (a.scalar() != 0.0) throw ValidationError("tensor_exp: scalar part must be zero");
  // Horner: 1 + a(1 + a/2(1 + a/3(...)))
  const int depth = a.depth();
  TensorSeries result = TensorSeries::identity(a.dim(), depth);
  for (int k = depth; k >= 1; --k) {
    result = tensor_mul(a, result);
    result *= 1.0 / k;
    result.level(0)[0] += 1.0;
  }
  return result;
}

TensorSeries tensor_log(const TensorSeries& g) {
  if (g.scalar() != 1.0) throw ValidationError("tensor_log: scalar part must be one");
  TensorSeries u = g;
  u.level(0)[0] = 0.0;
  // log(1+u) = u(1 - u(1/2 - u(1/3 - ...)))
  const int depth = g.depth();
  TensorSeries result(g.dim(), depth);
  for (int k = depth; k >= 1; --k) {
    TensorSeries term = tensor_mul(u, result);
    result = TensorSeries(g.dim(), depth);
    result.level(0)[0] = 1.0 / k;
    result -= term;
  }
  result = tensor_mul(u, result);
  return result;
}

TensorSeries tensor_inverse(const TensorSeries& g) {
  if (g.scalar() != 1.0) throw ValidationError("tensor_inverse: scalar part must be one");
  TensorSeries u = g;
  u.level(0)[0] = 0.0;
  // (1+u)^{-1} = 1 - u(1 - u(1 - ...))
  TensorSeries result = TensorSeries::identity(g.dim(), g.depth());
  for (int k = 0; k < g.depth(); ++k) {
    TensorSeries next = TensorSeries::identity(g.dim(), g.depth());
    next -= tensor_mul(u, result);
    result = std::move(next);
  }
  return result;
}

TensorSeries segment_exp(std::span<const double> v, int depth) {
  const int dim = static_cast<int>(v.size());
  TensorSeries out = TensorSeries::identity(dim, depth);
  for (int n = 1; n <= depth; ++n) {
    auto prev = out.level(n - 1);
    auto cur = out.level(n);
    const double inv = 1.0 / n;
    std::size_t idx = 0;
    for (double p : prev)
      for (double x : v) cur[idx++] = p * x * inv;
  }
  return out;
}

GroupElement::GroupElement(TensorSeries series) : series_(std::move(series)) {
  if (series_.scalar() != 1.0) throw ValidationError("group element must have scalar part 1");
}

GroupElement GroupElement::identity(int dim, int depth) {
  return GroupElement(TensorSeries::identity(dim, depth));
}

LieSeries::LieSeries(TensorSeries series) : series_(std::move(series)) {
  if (series_.scalar() != 0.0) throw ValidationError("Lie series must have scalar part 0");
}

GroupElement group_inverse(const GroupElement& g) { return GroupElement(tensor_inverse(g)); }
GroupElement group_exp(const LieSeries& a) { return GroupElement(tensor_exp(a)); }
LieSeries group_log(const GroupElement& g) { return LieSeries(tensor_log(g)); }

double eval(const TensorSeries& g, const WordSum& f) {
  double total = 0.0;
  for (const auto& [w, c] : f.terms()) total += c * g[w];
  return total;
}

// ------------------------------------------------------- membership tests

namespace {

void for_each_word(int dim, int length, const std::function<void(const Word&)>& fn) {
  const std::size_t count = level_size(dim, length);
  for (std::size_t i = 0; i < count; ++i) fn(word_from_index(i, length, dim));
}

}  // namespace

bool is_group_like(const TensorSeries& g, double tol) {
  if (g.scalar() != 1.0) return false;
  const int dim = g.dim();
  const int depth = g.depth();
  // The identity is symmetric in (u, w); checking |u| <= |w| suffices.
  for (int lu = 1; 2 * lu <= depth; ++lu) {
    for (int lw = lu; lu + lw <= depth; ++lw) {
      bool ok = true;
      for_each_word(dim, lu, [&](const Word& u) {
        if (!ok) return;
        const double gu = g[u];
        for_each_word(dim, lw, [&](const Word& w) {
          if (!ok) return;
          const double lhs = eval(g, shuffle(u, w));
          if (std::abs(lhs - gu * g[w]) > tol) ok = false;
        });
      });
      if (!ok) return false;
    }
  }
  return true;
}

std::vector<double> dynkin_bracket_level(std::span<const double> level, int dim, int n) {
  if (n == 1) return {level.begin(), level.end()};
  // Split P = sum_a P_a (x) e_a on the last letter; then
  // D(P) = sum_a D(P_a) (x) e_a - e_a (x) D(P_a).
  const std::size_t d = static_cast<std::size_t>(dim);
  const std::size_t prefix_size = level_size(dim, n - 1);
  std::vector<double> out(prefix_size * d, 0.0);
  std::vector<double> part(prefix_size);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t j = 0; j < prefix_size; ++j) part[j] = level[j * d + a];
    const std::vector<double> inner = dynkin_bracket_level(part, dim, n - 1);
    for (std::size_t j = 0; j < prefix_size; ++j) {
      out[j * d + a] += inner[j];
      out[a * prefix_size + j] -= inner[j];
    }
  }
  return out;
}

bool is_lie(const TensorSeries& a, double tol) {
  if (a.scalar() != 0.0) throw ValidationError("is_lie: scalar part must be zero");
  for (int n = 1; n <= a.depth(); ++n) {
    const auto level = a.level(n);
    const std::vector<double> bracketed = dynkin_bracket_level(level, a.dim(), n);
    for (std::size_t i = 0; i < level.size(); ++i)
      if (std::abs(bracketed[i] / n - level[i]) > tol) return false;
  }
  return true;
}

// ------------------------------------------------------------------ norms

double level_norm(std::span<const double> level) {
  double total = 0.0;
  for (double c : level) total += std::abs(c);
  return total;
}

double dilation_norm(const TensorSeries& g) {
  double best = 0.0;
  for (int i = 1; i <= g.depth(); ++i)
    best = std::max(best, std::pow(level_norm(g.level(i)), 1.0 / i));
  return best;
}

double group_distance(const TensorSeries& a, const TensorSeries& b) {
  require_compatible(a, b, "group_distance");
  return dilation_norm(tensor_mul(tensor_inverse(a), b));
}

double max_level_difference(const TensorSeries& a, const TensorSeries& b) {
  require_compatible(a, b, "max_level_difference");
  double worst = 0.0;
  for (int n = 0; n <= a.depth(); ++n) {
    double diff = 0.0;
    auto la = a.level(n);
    auto lb = b.level(n);
    for (std::size_t i = 0; i < la.size(); ++i) diff += std::abs(la[i] - lb[i]);
    worst = std::max(worst, diff);
  }
  return worst;
}

}  // namespace sigtree
