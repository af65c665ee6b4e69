#pragma once

// Polynomial 1-form integrals as linear functionals of the signature, and
// linear maps extended multiplicatively to signatures.

#include <cstddef>
#include <span>
#include <vector>

#include "sigtree/paths.hpp"
#include "sigtree/tensor_algebra.hpp"

namespace sigtree {

/// c * x^alpha dx^letter; alpha has one exponent per coordinate, letter is
/// 1-based.
struct FormTerm {
  std::vector<int> alpha;
  int letter = 1;
  double coef = 0.0;
};

/// Sum of FormTerms over R^dim.
class Polynomial1Form {
 public:
  Polynomial1Form(int dim, std::vector<FormTerm> terms);

  int dim() const { return dim_; }
  const std::vector<FormTerm>& terms() const { return terms_; }
  /// Largest total monomial degree.
  int degree() const;

  /// Coefficient of dx^i at `point` for every i (0-based output).
  std::vector<double> evaluate(std::span<const double> point) const;

 private:
  int dim_;
  std::vector<FormTerm> terms_;
};

/// Word functional F with integral of psi along (x - x_0) = <F, sig(x, N)>.
/// Needs N >= degree + 1.
WordSum form_to_functional(const Polynomial1Form& form, int depth);

/// Midpoint rule with `mesh` points per segment along x translated to start
/// at the origin.
double integrate_numeric(const Polynomial1Form& form, const PolyPath& x, std::size_t mesh);

/// One Richardson step on the midpoint rule, (4 I(2m) - I(m)) / 3; exact for
/// forms of degree <= 3.
double integrate_richardson(const Polynomial1Form& form, const PolyPath& x, std::size_t mesh);

/// Requires sig(x, N) = sig(y, N) within tol. True iff the signature
/// pairings agree within tol and the Richardson quadratures (mesh 256) agree
/// within 1e-6 relative.
bool invariance_check(const Polynomial1Form& form, const PolyPath& x, const PolyPath& y, int depth,
                      double tol = kDefaultTolerance);

/// Dense real matrix R^cols -> R^rows.
class LinearMap {
 public:
  LinearMap(std::size_t rows, std::size_t cols, std::vector<double> row_major);
  static LinearMap identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<double> apply(std::span<const double> v) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

/// Phi applied to every vertex.
PolyPath map_path(const LinearMap& phi, const PolyPath& x);

/// Phi extended to every level by Phi(w_1 (x) .. (x) w_n) = Phi(w_1) (x) ..
/// (x) Phi(w_n).
GroupElement apply_linear_map(const LinearMap& phi, const GroupElement& g);
TensorSeries apply_linear_map(const LinearMap& phi, const TensorSeries& g);

}  // namespace sigtree
