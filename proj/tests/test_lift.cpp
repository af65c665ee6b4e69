#include <doctest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "os_oracle.hpp"
#include "sigtree/errors.hpp"
#include "sigtree/lift.hpp"
#include "sigtree/reduction.hpp"
#include "sigtree/signature.hpp"

using namespace sigtree;

namespace {

// |OS(j)| recovered by oracle::derive_ordered_shuffles (tests/os_fixture_gen,
// mesh 1024) for every block profile of total size <= 6.
const std::map<std::vector<int>, std::size_t> kOrderedShuffleCounts = {
    {{1}, 1},
    {{1, 1}, 1}, {{2}, 1},
    {{1, 1, 1}, 1}, {{1, 2}, 2}, {{2, 1}, 1}, {{3}, 1},
    {{1, 1, 1, 1}, 1}, {{1, 1, 2}, 3}, {{1, 2, 1}, 2}, {{1, 3}, 3}, {{2, 1, 1}, 1}, {{2, 2}, 3},
    {{3, 1}, 1}, {{4}, 1},
    {{1, 1, 1, 1, 1}, 1}, {{1, 1, 1, 2}, 4}, {{1, 1, 2, 1}, 3}, {{1, 1, 3}, 6}, {{1, 2, 1, 1}, 2},
    {{1, 2, 2}, 8}, {{1, 3, 1}, 3}, {{1, 4}, 4}, {{2, 1, 1, 1}, 1}, {{2, 1, 2}, 4}, {{2, 2, 1}, 3},
    {{2, 3}, 6}, {{3, 1, 1}, 1}, {{3, 2}, 4}, {{4, 1}, 1}, {{5}, 1},
    {{1, 1, 1, 1, 1, 1}, 1}, {{1, 1, 1, 1, 2}, 5}, {{1, 1, 1, 2, 1}, 4}, {{1, 1, 1, 3}, 10},
    {{1, 1, 2, 1, 1}, 3}, {{1, 1, 2, 2}, 15}, {{1, 1, 3, 1}, 6}, {{1, 1, 4}, 10}, {{1, 2, 1, 1, 1}, 2},
    {{1, 2, 1, 2}, 10}, {{1, 2, 2, 1}, 8}, {{1, 2, 3}, 20}, {{1, 3, 1, 1}, 3}, {{1, 3, 2}, 15},
    {{1, 4, 1}, 4}, {{1, 5}, 5}, {{2, 1, 1, 1, 1}, 1}, {{2, 1, 1, 2}, 5}, {{2, 1, 2, 1}, 4},
    {{2, 1, 3}, 10}, {{2, 2, 1, 1}, 3}, {{2, 2, 2}, 15}, {{2, 3, 1}, 6}, {{2, 4}, 10},
    {{3, 1, 1, 1}, 1}, {{3, 1, 2}, 5}, {{3, 2, 1}, 4}, {{3, 3}, 10}, {{4, 1, 1}, 1}, {{4, 2}, 5},
    {{5, 1}, 1}, {{6}, 1},
};

HomogeneousTensor random_tensor(std::mt19937_64& rng, int dim, int degree) {
  std::normal_distribution<double> g;
  HomogeneousTensor t{degree, std::vector<double>(level_size(dim, degree))};
  for (double& v : t.values) v = g(rng);
  return t;
}

// Lifted-signature coefficient of flat word `levels` for a scalar path with
// total increment a: the lift is u -> (u, u^2/2!, ..., u^N/N!) and
// d(u^k/k!) = u^(k-1)/(k-1)! du, so the iterated integral is a monomial.
double scalar_lift_coefficient(const std::vector<int>& levels, double a) {
  double c = 1.0;
  int e = 0;
  for (int k : levels) {
    c /= std::tgamma(static_cast<double>(k)) * static_cast<double>(e + k);
    e += k;
  }
  return c * std::pow(a, e);
}

}  // namespace

TEST_SUITE("lift") {

TEST_CASE("graded space layout") {
  const GradedSpace w(2, 3);
  CHECK(w.flat_dim() == 2 + 4 + 8);
  CHECK(w.flat_index(1, 1) == 1);
  CHECK(w.flat_index(2, 0) == 2);
  CHECK(w.flat_index(3, 7) == 13);
  for (std::size_t f = 0; f < 14; ++f) {
    const auto [level, index] = w.split(f);
    CHECK(w.flat_index(level, index) == f);
  }
  CHECK_THROWS_AS(w.flat_index(4, 0), ValidationError);
  CHECK_THROWS_AS(w.split(14), ValidationError);
  CHECK_THROWS_AS(GradedSpace(0, 2), ValidationError);
  CHECK(multi_indices(2, 2).size() == 4);
  CHECK(multi_indices(2, 2)[1].to_string() == "(1,2)");
}

TEST_CASE("ordered shuffle sets") {
  CHECK(ordered_shuffles({1}).ranks == std::vector<std::vector<int>>{{0}});
  CHECK(ordered_shuffles({1, 1}).ranks == std::vector<std::vector<int>>{{0, 1}});
  for (const auto& [profile, count] : kOrderedShuffleCounts) {
    const OrderedShuffleSet& set = ordered_shuffles(profile);
    CHECK_MESSAGE(set.size() == count, MultiIndex(profile).to_string());
    // members are block-order-preserving permutations
    for (const auto& r : set.ranks) {
      std::vector<int> sorted = r;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == static_cast<int>(i));
      std::size_t pos = 0;
      for (int size : profile) {
        for (int q = 1; q < size; ++q) CHECK(r[pos + q - 1] < r[pos + q]);
        pos += static_cast<std::size_t>(size);
      }
    }
  }
  CHECK(&ordered_shuffles({2, 1}) == &ordered_shuffles({2, 1}));
}

TEST_CASE("ordered shuffles agree with the mesh oracle") {
  for (const std::vector<int>& profile : {std::vector<int>{1, 1}, {1, 2}, {2, 1}, {1, 1, 1}, {1, 3}, {2, 2},
                                          {3, 1}, {1, 1, 2}, {1, 2, 1}, {2, 1, 1}, {1, 1, 1, 1}}) {
    const auto derived = oracle::derive_ordered_shuffles(profile, 77, 256);
    CHECK(derived.max_rounding < 1e-2);
    const auto& lib = ordered_shuffles(profile).ranks;
    CHECK_MESSAGE(std::set<std::vector<int>>(lib.begin(), lib.end()) == derived.members,
                  MultiIndex(profile).to_string());
  }
}

TEST_CASE("permutation action and embedding") {
  // X = e1 (x) e2 in R^2; sigma = (1 0) swaps the two positions.
  HomogeneousTensor x{2, {0, 1, 0, 0}};
  CHECK(permute(x, {1, 0}, 2).values == std::vector<double>{0, 0, 1, 0});
  CHECK(permute(x, {0, 1}, 2).values == x.values);

  std::mt19937_64 rng(40);
  const HomogeneousTensor body = random_tensor(rng, 2, 3);
  const HomogeneousTensor one{0, {1.0}};
  CHECK(f_embed(2, {one, one}, body, {1, 2}).values == body.values);

  const HomogeneousTensor v = random_tensor(rng, 2, 2);
  const HomogeneousTensor w = random_tensor(rng, 2, 1);
  const HomogeneousTensor vw = f_embed(2, {v}, w, {1});
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(vw.values[i * 2 + j] == v.values[i] * w.values[j]);

  // two blocks: prefix v1 before block 1, prefix v2 before block 2
  const HomogeneousTensor v1 = random_tensor(rng, 2, 1);
  const HomogeneousTensor v2 = random_tensor(rng, 2, 1);
  const HomogeneousTensor b2 = random_tensor(rng, 2, 2);
  const HomogeneousTensor f = f_embed(2, {v1, v2}, b2, {1, 1});
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b)
      for (int c = 1; c <= 2; ++c)
        for (int e = 1; e <= 2; ++e) {
          const double expected = v1.values[a - 1] * b2.values[word_index(Word{b, e}, 2)] * v2.values[c - 1];
          CHECK(f.values[word_index(Word{a, b, c, e}, 2)] == doctest::Approx(expected));
        }

  // linear in the body
  const HomogeneousTensor w2 = random_tensor(rng, 2, 2);
  HomogeneousTensor mix{2, std::vector<double>(4)};
  for (std::size_t i = 0; i < 4; ++i) mix.values[i] = 2.0 * b2.values[i] - 3.0 * w2.values[i];
  const HomogeneousTensor fm = f_embed(2, {v1, v2}, mix, {1, 1});
  const HomogeneousTensor f2 = f_embed(2, {v1, v2}, w2, {1, 1});
  for (std::size_t i = 0; i < fm.values.size(); ++i)
    CHECK(fm.values[i] == doctest::Approx(2.0 * f.values[i] - 3.0 * f2.values[i]));

  CHECK_THROWS_AS(f_embed(2, {v1}, b2, {1}), ValidationError);
  CHECK_THROWS_AS(f_embed(2, {v1, v2}, b2, {2, 1}), ValidationError);
}

TEST_CASE("truncation one reproduces the signature") {
  std::mt19937_64 rng(41);
  const PolyPath x = oracle::random_path(rng, 2, 4);
  CHECK(max_level_difference(lift_signature(x, 1, 4), sig(x, 4)) < 1e-13);
}

TEST_CASE("scalar paths have monomial lifts") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 5; ++t) {
    const PolyPath x = oracle::random_path(rng, 1, 5);
    const double a = x.end()[0] - x.start()[0];
    const int n = 3, m = 3;
    const GroupElement lifted = lift_signature(x, n, m);
    for (int level = 1; level <= m; ++level)
      for (std::size_t i = 0; i < level_size(n, level); ++i) {
        const Word w = word_from_index(i, level, n);
        CHECK(lifted.series().level(level)[i] ==
              doctest::Approx(scalar_lift_coefficient(w.letters, a)).epsilon(1e-12));
      }
  }
}

TEST_CASE("lift properties") {
  std::mt19937_64 rng(43);
  const PolyPath x = oracle::random_path(rng, 2, 5);
  const GroupElement lifted = lift_signature(x, 2, 3);
  CHECK(lifted.dim() == 6);
  CHECK(is_group_like(lifted, 1e-9));
  // level one is the flattened truncated signature minus the unit
  const GradedSpace w(2, 2);
  const std::vector<double> flat = w.flatten(sig(x, 2));
  for (std::size_t f = 0; f < flat.size(); ++f) CHECK(lifted.series().level(1)[f] == doctest::Approx(flat[f]));

  // Chen over subintervals
  for (std::size_t u = 1; u < x.segment_count(); ++u) {
    const TensorSeries joined = tensor_mul(lift_signature_on(x, 0, u, 2, 3), lift_signature_on(x, u, x.size() - 1, 2, 3));
    CHECK(max_level_difference(joined, lifted) < 1e-9);
  }
  CHECK_THROWS_AS(lift_signature(x, 4, 9), ValidationError);
  CHECK_THROWS_AS(lift_signature_on(x, 3, 2, 2, 2), ValidationError);
}

TEST_CASE("lift agrees with the sampled lifted path") {
  std::mt19937_64 rng(44);
  const PolyPath x = oracle::random_path(rng, 2, 3);
  const GroupElement lifted = lift_signature(x, 2, 2);
  double previous = 0.0;
  for (std::size_t mesh : {256u, 512u, 1024u}) {
    const GroupElement approx = sig(lift_path_oracle(x, 2, mesh), 2);
    const double err = max_level_difference(approx, lifted);
    CHECK(err < 1e-2);
    if (previous > 0.0) CHECK(err < previous);
    previous = err;
  }
  CHECK(lift_path_oracle(PolyPath(2, {1, 1}), 2, 8).segment_count() == 8);
  CHECK(p_variation(lift_path_oracle(PolyPath(2, {1, 1}), 2, 8), 1.0) == 0.0);
  // level 1 telescopes exactly
  const GroupElement coarse = sig(lift_path_oracle(x, 2, 3), 2);
  for (std::size_t f = 0; f < 6; ++f)
    CHECK(coarse.series().level(1)[f] == doctest::Approx(lifted.series().level(1)[f]).epsilon(1e-13));
  CHECK_THROWS_AS(lift_path_oracle(x, 2, 1), ValidationError);
}

TEST_CASE("functoriality") {
  std::mt19937_64 rng(45);
  const PolyPath x = oracle::random_path(rng, 2, 4);
  CHECK(signature_functoriality_check(x, insert_spurs(x, 4, rng), 2, 2, 1e-8));
  std::vector<double> refined_coords;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (k > 0)
      for (std::size_t i = 0; i < 2; ++i) refined_coords.push_back(0.5 * (x.vertex(k - 1)[i] + x.vertex(k)[i]));
    refined_coords.insert(refined_coords.end(), x.vertex(k).begin(), x.vertex(k).end());
  }
  CHECK(signature_functoriality_check(x, PolyPath(2, refined_coords), 2, 2, 1e-8));

  const PolyPath square(2, {0, 0, 1, 0, 1, 1, 0, 1, 0, 0});
  CHECK_THROWS_AS(signature_functoriality_check(square, reverse(square), 2, 2), PreconditionError);
  CHECK(distinguishing_level(sig(square, 4), sig(reverse(square), 4)) == 2);
}

}  // TEST_SUITE
