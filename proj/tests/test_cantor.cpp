#include <doctest.h>

#include "smlab/cantor.hpp"
#include "smlab/error.hpp"

using namespace smlab;
using namespace smlab::cantor;

TEST_CASE("points and coordinates") {
  CHECK(num_points(1) == 8);
  CHECK(num_points(3) == 128);
  Point x = 0;
  x = with_coordinate(x, -2, 1, 2);
  x = with_coordinate(x, 1, 1, 2);
  CHECK(coordinate(x, -2, 2) == 1);
  CHECK(coordinate(x, 0, 2) == 0);
  CHECK(coordinate(x, 1, 2) == 1);
  CHECK(with_coordinate(x, 1, 0, 2) == with_coordinate(0, -2, 1, 2));
}

TEST_CASE("word enumeration") {
  for (int depth = 1; depth <= 3; ++depth) {
    size_t want = 1;
    for (int h = 0; h < depth; ++h) want += size_t(1) << (2 * h + 1);
    const auto words = enumerate_words(depth);
    CHECK(words.size() == want);
    CHECK(words.front().length() == 0);
  }
}

TEST_CASE("ultrametric") {
  const int depth = 2;
  CHECK(ultrametric(0, 0, depth) == 0.0);
  CHECK(ultrametric(0, with_coordinate(0, 0, 1, depth), depth) == 1.0);
  CHECK(ultrametric(0, with_coordinate(0, 1, 1, depth), depth) == 0.5);
  CHECK(ultrametric(0, with_coordinate(0, -2, 1, depth), depth) == 0.125);
  const int n = num_points(depth);
  for (Point x = 0; x < Point(n); ++x)
    for (Point y = 0; y < Point(n); ++y) {
      CHECK(ultrametric(x, y, depth) == ultrametric(y, x, depth));
      for (Point z = 0; z < Point(n); z += 5)
        CHECK(ultrametric(x, y, depth) <= std::max(ultrametric(x, z, depth), ultrametric(z, y, depth)));
    }
}

TEST_CASE("choice maps") {
  Rng rng(81);
  for (int depth = 1; depth <= 3; ++depth) {
    const auto c = canonical_choice(depth);
    CHECK_NOTHROW(c.check());
    CHECK(c.entries.size() == enumerate_words(depth).size());
    CHECK_NOTHROW(random_choice(depth, rng).check());
  }
  auto bad = canonical_choice(1);
  bad.entries[1].y = bad.entries[1].x;
  CHECK_THROWS_AS(bad.check(), LabError);
}

TEST_CASE("seminorm of coordinate functions") {
  Rng rng(82);
  const int depth = 3;
  for (int j = -depth; j <= depth; ++j) {
    const auto f = coordinate_function(j, depth);
    const double want = j == 0 ? 1.0 : std::ldexp(1.0, 2 * std::abs(j) - 1);
    CHECK(cantor_seminorm(f) == want);
    CHECK(cantor_commutator_norm(f, canonical_choice(depth)) <= want);
  }
  for (int t = 0; t < 10; ++t) {
    const auto f = random_cylinder(depth, rng);
    CHECK(cantor_commutator_norm(f, random_choice(depth, rng)) <= cantor_seminorm(f));
  }
}

TEST_CASE("Connes supremum reproduces the ultrametric") {
  for (int depth = 1; depth <= 2; ++depth) {
    const auto table = connes_sup_table(depth);
    const int n = num_points(depth);
    for (Point x = 0; x < Point(n); ++x)
      for (Point y = 0; y < Point(n); ++y) CHECK(table[y * n + x] == doctest::Approx(ultrametric(x, y, depth)).epsilon(1e-14));
  }
  CHECK(connes_sup_over_choices(0, 1, 3) == doctest::Approx(ultrametric(0, 1, 3)).epsilon(1e-14));
}

TEST_CASE("shifted cylinders") {
  const int depth = 3;
  for (int j = -1; j <= 1; ++j)
    for (int k = -2; k <= 2; ++k) {
      const auto g = shift_cylinder(coordinate_function(j, depth), k);
      CHECK(g.table == coordinate_function(j + k, depth).table);
    }
  CHECK_THROWS_AS(shift_cylinder(coordinate_function(3, depth), 1), LabError);
  // the seminorm grows by a factor 4 per step away from the center
  CHECK(cantor_seminorm(shift_cylinder(coordinate_function(1, depth), 1)) == 4.0 * cantor_seminorm(coordinate_function(1, depth)));
}
