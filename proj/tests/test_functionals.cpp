#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sigtree/errors.hpp"
#include "sigtree/functionals.hpp"
#include "sigtree/reduction.hpp"
#include "sigtree/signature.hpp"

using namespace sigtree;

namespace {

Polynomial1Form random_form(std::mt19937_64& rng, int dim, int max_degree) {
  std::uniform_int_distribution<int> terms(1, 4);
  std::uniform_int_distribution<int> letter(1, dim);
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::normal_distribution<double> coef;
  std::vector<FormTerm> out;
  const int n = terms(rng);
  for (int t = 0; t < n; ++t) {
    FormTerm term{std::vector<int>(static_cast<std::size_t>(dim), 0), letter(rng), coef(rng)};
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) ++term.alpha[static_cast<std::size_t>(letter(rng) - 1)];
    out.push_back(std::move(term));
  }
  return Polynomial1Form(dim, std::move(out));
}

}  // namespace

TEST_SUITE("functionals") {

TEST_CASE("form validation") {
  CHECK_THROWS_AS(Polynomial1Form(2, {{{1}, 1, 1.0}}), ValidationError);
  CHECK_THROWS_AS(Polynomial1Form(2, {{{1, 0}, 3, 1.0}}), ValidationError);
  CHECK_THROWS_AS(Polynomial1Form(2, {{{-1, 0}, 1, 1.0}}), ValidationError);
  CHECK(Polynomial1Form(2, {{{1, 2}, 1, 1.0}, {{0, 1}, 2, 1.0}}).degree() == 3);
}

TEST_CASE("elementary functionals") {
  CHECK(form_to_functional(Polynomial1Form(2, {{{0, 0}, 1, 1.0}}), 2) == WordSum{{Word{1}, 1.0}});
  CHECK(form_to_functional(Polynomial1Form(2, {{{1, 0}, 2, 1.0}}), 2) == WordSum{{Word{1, 2}, 1.0}});
  // x1^2 dx2 -> 2 * (1,1,2)
  CHECK(form_to_functional(Polynomial1Form(2, {{{2, 0}, 2, 1.0}}), 3) == WordSum{{Word{1, 1, 2}, 2.0}});
  CHECK_THROWS_AS(form_to_functional(Polynomial1Form(2, {{{2, 0}, 2, 1.0}}), 2), PreconditionError);

  const PolyPath l(2, {0, 0, 1, 0, 1, 1});
  const Polynomial1Form x1dx2(2, {{{1, 0}, 2, 1.0}});
  CHECK(eval(sig(l, 2), form_to_functional(x1dx2, 2)) == doctest::Approx(1.0));
  CHECK(integrate_numeric(x1dx2, l, 1) == doctest::Approx(1.0));

  const PolyPath square(2, {0, 0, 1, 0, 1, 1, 0, 1, 0, 0});
  const Polynomial1Form x2dx1(2, {{{0, 1}, 1, 1.0}});
  CHECK(eval(sig(square, 2), form_to_functional(x2dx1, 2)) == doctest::Approx(-1.0));
  CHECK(integrate_numeric(x2dx1, square, 8) == doctest::Approx(-1.0));

  CHECK(integrate_numeric(Polynomial1Form(2, {{{0, 0}, 1, 1.0}}), PolyPath(2, {0, 0, 1, 0}), 4) == 1.0);
  CHECK(integrate_numeric(x1dx2, PolyPath(2, {3, 3}), 4) == 0.0);
}

TEST_CASE("functional agrees with quadrature") {
  std::mt19937_64 rng(50);
  for (int t = 0; t < 100; ++t) {
    const int dim = 1 + t % 3;
    const Polynomial1Form form = random_form(rng, dim, 3);
    const PolyPath x = oracle::random_path(rng, static_cast<std::size_t>(dim), 4, 0.6);
    const double pairing = eval(sig(x, 4), form_to_functional(form, 4));
    // midpoint rule: O(h^2), so only loosely at this mesh
    CHECK(pairing == doctest::Approx(integrate_numeric(form, x, 1 << 10)).epsilon(1e-5).scale(1.0));
    CHECK(pairing == doctest::Approx(integrate_richardson(form, x, 8)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("functional is linear in the form and respects shuffle powers") {
  std::mt19937_64 rng(51);
  const Polynomial1Form a = random_form(rng, 2, 2);
  const Polynomial1Form b = random_form(rng, 2, 2);
  std::vector<FormTerm> sum = a.terms();
  for (FormTerm t : b.terms()) {
    t.coef *= -2.5;
    sum.push_back(t);
  }
  WordSum expected = form_to_functional(a, 3);
  expected += form_to_functional(b, 3) * -2.5;
  const GroupElement s = sig(oracle::random_path(rng, 2, 5), 3);
  CHECK(eval(s, form_to_functional(Polynomial1Form(2, sum), 3)) == doctest::Approx(eval(s, expected)));

  WordSum power{{Word{}, 1.0}};
  for (int k = 1; k <= 3; ++k) {
    power = shuffle(power, WordSum{{Word{2}, 1.0}});
    CHECK(eval(s, power) == doctest::Approx(std::pow(s[Word{2}], k)));
  }
}

TEST_CASE("invariance under tree-like modifications") {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 20; ++t) {
    const Polynomial1Form form = random_form(rng, 2, 3);
    const PolyPath x = oracle::random_path(rng, 2, 4, 0.7);
    CHECK(invariance_check(form, x, insert_spurs(x, 3, rng), 4));
  }
  const PolyPath x = oracle::random_path(rng, 2, 3);
  const PolyPath timed(2, x.coords(), std::vector<double>{0.0, 0.1, 0.5, 2.0});
  CHECK(invariance_check(random_form(rng, 2, 2), x, timed, 3));
  CHECK_THROWS_AS(invariance_check(random_form(rng, 2, 1), x, reverse(x), 3), PreconditionError);

  // Exact forms only see the endpoints, so x*y and y*x integrate alike
  // while their signatures already differ at level 2.
  const PolyPath y = oracle::random_path(rng, 2, 3);
  const Polynomial1Form exact(2, {{{0, 0}, 1, 1.0}, {{0, 0}, 2, -0.5}});
  const GroupElement xy = sig(concat(x, y), 2);
  const GroupElement yx = sig(concat(y, x), 2);
  CHECK(distinguishing_level(xy, yx) == 2);
  CHECK(eval(xy, form_to_functional(exact, 2)) == doctest::Approx(eval(yx, form_to_functional(exact, 2))));
}

TEST_CASE("linear maps on signatures") {
  std::mt19937_64 rng(53);
  const PolyPath x = oracle::random_path(rng, 3, 5);
  const GroupElement s = sig(x, 4);
  CHECK(max_level_difference(apply_linear_map(LinearMap::identity(3), s), s) < 1e-15);

  const LinearMap project(2, 3, {1, 0, 0, 0, 1, 0});
  CHECK(max_level_difference(apply_linear_map(project, s), sig(map_path(project, x), 4)) < 1e-11);
  const LinearMap zero(2, 3, std::vector<double>(6, 0.0));
  CHECK(apply_linear_map(zero, s).series() == TensorSeries::identity(2, 4));

  std::normal_distribution<double> g;
  std::vector<double> m(6);
  for (double& v : m) v = g(rng);
  const LinearMap phi(2, 3, m);
  const GroupElement h = sig(oracle::random_path(rng, 3, 3), 4);
  CHECK(max_level_difference(apply_linear_map(phi, s * h), apply_linear_map(phi, s) * apply_linear_map(phi, h)) <
        1e-11);
  CHECK(is_group_like(apply_linear_map(phi, s)));
  CHECK_THROWS_AS(apply_linear_map(phi, sig(oracle::random_path(rng, 2, 3), 3)), IncompatibleOperands);
  CHECK_THROWS_AS(LinearMap(2, 2, {1.0}), ValidationError);
}

}  // TEST_SUITE
