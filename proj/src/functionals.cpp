#include "sigtree/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sigtree/errors.hpp"
#include "sigtree/signature.hpp"

namespace sigtree {

Polynomial1Form::Polynomial1Form(int dim, std::vector<FormTerm> terms)
    : dim_(dim), terms_(std::move(terms)) {
  if (dim < 1) throw ValidationError("1-form: dimension must be positive");
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    const FormTerm& term = terms_[t];
    if (term.alpha.size() != static_cast<std::size_t>(dim)) {
      throw ValidationError("1-form term " + std::to_string(t) + ": alpha needs " +
                            std::to_string(dim) + " exponents");
    }
    for (int a : term.alpha)
      if (a < 0) throw ValidationError("1-form term " + std::to_string(t) + ": negative exponent");
    if (term.letter < 1 || term.letter > dim) {
      throw ValidationError("1-form term " + std::to_string(t) + ": letter outside 1.." +
                            std::to_string(dim));
    }
    if (!std::isfinite(term.coef)) throw ValidationError("1-form term " + std::to_string(t) + ": coefficient not finite");
  }
}

int Polynomial1Form::degree() const {
  int deg = 0;
  for (const auto& t : terms_) deg = std::max(deg, std::accumulate(t.alpha.begin(), t.alpha.end(), 0));
  return deg;
}

std::vector<double> Polynomial1Form::evaluate(std::span<const double> point) const {
  std::vector<double> out(static_cast<std::size_t>(dim_), 0.0);
  for (const auto& t : terms_) {
    double mono = t.coef;
    for (std::size_t a = 0; a < t.alpha.size(); ++a)
      for (int e = 0; e < t.alpha[a]; ++e) mono *= point[a];
    out[static_cast<std::size_t>(t.letter - 1)] += mono;
  }
  return out;
}

WordSum form_to_functional(const Polynomial1Form& form, int depth) {
  if (form.degree() + 1 > depth) {
    throw PreconditionError("form_to_functional: a degree-" + std::to_string(form.degree()) +
                            " form needs signature depth " + std::to_string(form.degree() + 1) +
                            ", got " + std::to_string(depth));
  }
  WordSum out;
  for (const auto& t : form.terms()) {
    // x^alpha = <(1)^{sh a_1} sh ... sh (d)^{sh a_d}, S> on group-like S
    // based at the origin.
    WordSum monomial{{Word{}, 1.0}};
    for (std::size_t a = 0; a < t.alpha.size(); ++a)
      for (int e = 0; e < t.alpha[a]; ++e)
        monomial = shuffle(monomial, WordSum{{Word{static_cast<int>(a) + 1}, 1.0}});
    out += monomial.append(Word{t.letter}) * t.coef;
  }
  return out;
}

double integrate_numeric(const Polynomial1Form& form, const PolyPath& x, std::size_t mesh) {
  if (mesh < 1) throw ValidationError("integrate_numeric: mesh must be at least 1");
  if (static_cast<int>(x.dim()) != form.dim()) throw IncompatibleOperands("integrate_numeric: dimension mismatch");
  const PolyPath based = x.based_at_origin();
  const std::size_t dim = x.dim();
  const double h = 1.0 / static_cast<double>(mesh);
  std::vector<double> point(dim);
  double total = 0.0;
  for (std::size_t k = 0; k < based.segment_count(); ++k) {
    const auto a = based.vertex(k);
    const std::vector<double> delta = based.increment(k);
    double seg = 0.0;
    for (std::size_t m = 0; m < mesh; ++m) {
      const double s = (static_cast<double>(m) + 0.5) * h;
      for (std::size_t i = 0; i < dim; ++i) point[i] = a[i] + s * delta[i];
      const std::vector<double> psi = form.evaluate(point);
      for (std::size_t i = 0; i < dim; ++i) seg += psi[i] * delta[i];
    }
    total += seg * h;
  }
  return total;
}

double integrate_richardson(const Polynomial1Form& form, const PolyPath& x, std::size_t mesh) {
  return (4.0 * integrate_numeric(form, x, 2 * mesh) - integrate_numeric(form, x, mesh)) / 3.0;
}

bool invariance_check(const Polynomial1Form& form, const PolyPath& x, const PolyPath& y, int depth,
                      double tol) {
  const GroupElement sx = sig(x, depth);
  const GroupElement sy = sig(y, depth);
  if (distinguishing_level(sx, sy, tol)) {
    throw PreconditionError("invariance_check: signatures differ up to depth " + std::to_string(depth));
  }
  const WordSum functional = form_to_functional(form, depth);
  const double a = eval(sx, functional);
  const double b = eval(sy, functional);
  const bool pairing_ok = std::abs(a - b) <= tol * std::max(1.0, std::abs(a));
  const double qa = integrate_richardson(form, x, 256);
  const double qb = integrate_richardson(form, y, 256);
  const bool quadrature_ok = std::abs(qa - qb) <= 1e-6 * std::max(1.0, std::abs(qa));
  return pairing_ok && quadrature_ok;
}

// ------------------------------------------------------------- LinearMap

LinearMap::LinearMap(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (rows == 0 || cols == 0) throw ValidationError("linear map: shape must be nonempty");
  if (data_.size() != rows * cols) throw ValidationError("linear map: entry count does not match shape");
  for (double v : data_)
    if (!std::isfinite(v)) throw ValidationError("linear map: entries must be finite");
}

LinearMap LinearMap::identity(std::size_t n) {
  std::vector<double> data(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) data[i * n + i] = 1.0;
  return LinearMap(n, n, std::move(data));
}

std::vector<double> LinearMap::apply(std::span<const double> v) const {
  if (v.size() != cols_) throw IncompatibleOperands("linear map: vector dimension mismatch");
  std::vector<double> out(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r] += data_[r * cols_ + c] * v[c];
  return out;
}

PolyPath map_path(const LinearMap& phi, const PolyPath& x) {
  std::vector<double> coords;
  coords.reserve(x.size() * phi.rows());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const std::vector<double> p = phi.apply(x.vertex(k));
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return PolyPath(phi.rows(), std::move(coords), x.times());
}

TensorSeries apply_linear_map(const LinearMap& phi, const TensorSeries& g) {
  if (static_cast<std::size_t>(g.dim()) != phi.cols()) {
    throw IncompatibleOperands("apply_linear_map: map has " + std::to_string(phi.cols()) +
                               " columns but the series has dimension " + std::to_string(g.dim()));
  }
  const std::size_t src = phi.cols();
  const std::size_t dst = phi.rows();
  TensorSeries out(static_cast<int>(dst), g.depth());
  out.level(0)[0] = g.scalar();
  for (int n = 1; n <= g.depth(); ++n) {
    // Contract one mode at a time: shape (pre, src, post) -> (pre, dst, post).
    std::vector<double> cur(g.level(n).begin(), g.level(n).end());
    for (int mode = 0; mode < n; ++mode) {
      const std::size_t pre = level_size(static_cast<int>(dst), mode);
      const std::size_t post = level_size(static_cast<int>(src), n - mode - 1);
      std::vector<double> next(pre * dst * post, 0.0);
      for (std::size_t p = 0; p < pre; ++p)
        for (std::size_t c = 0; c < src; ++c) {
          const double* in = &cur[(p * src + c) * post];
          for (std::size_t r = 0; r < dst; ++r) {
            const double w = phi(r, c);
            if (w == 0.0) continue;
            double* o = &next[(p * dst + r) * post];
            for (std::size_t q = 0; q < post; ++q) o[q] += w * in[q];
          }
        }
      cur = std::move(next);
    }
    std::copy(cur.begin(), cur.end(), out.level(n).begin());
  }
  return out;
}

GroupElement apply_linear_map(const LinearMap& phi, const GroupElement& g) {
  return GroupElement(apply_linear_map(phi, g.series()));
}

}  // namespace sigtree
