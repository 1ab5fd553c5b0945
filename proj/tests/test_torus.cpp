#include <doctest.h>

#include <numbers>

#include "smlab/torus.hpp"
#include "support.hpp"

using namespace smlab;
using namespace smlab::torus;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double largest_root(const CatAuto& A) {
  const auto& e = A.entries();
  const double tr = double(e[0] + e[3]), det = double(A.det());
  const double disc = tr * tr - 4.0 * det;
  if (disc < 0) return std::sqrt(std::abs(det));
  return (std::abs(tr) + std::sqrt(disc)) / 2.0;
}

}  // namespace

TEST_CASE("polynomials and products") {
  const auto f = TorusPoly::mode({1, -2}, 4, 2.0);
  CHECK(f.support_radius() == 2);
  CHECK(TorusPoly::constant(1.0, 4).support_radius() == 0);
  const auto g = multiply(f, TorusPoly::mode({2, 1}, 4, Complex(0.0, 1.0)));
  REQUIRE(g.coeffs.size() == 1);
  CHECK(g.coeffs.begin()->first == Mode{3, -1});
  CHECK(g.coeffs.begin()->second == Complex(0.0, 2.0));
  CHECK_THROWS_AS(TorusPoly::mode({5, 0}, 4), LabError);
  CHECK_THROWS_AS(multiply(TorusPoly::mode({3, 0}, 4), TorusPoly::mode({3, 0}, 4)), LabError);
}

TEST_CASE("toral automorphisms") {
  CHECK(CatAuto::cat().det() == 1);
  CHECK(CatAuto::cat().spectral_radius() == doctest::Approx((3.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-14));
  CHECK(CatAuto::parabolic().spectral_radius() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(CatAuto(2, 0, 0, 1), LabError);
  const CatAuto A(3, 2, 1, 1);
  CHECK(A.spectral_radius() == doctest::Approx(largest_root(A)).epsilon(1e-14));
  const auto inv = A.inverse();
  for (Mode v : {Mode{1, 0}, Mode{0, 1}, Mode{-3, 7}}) CHECK(inv.apply(A.apply(v)) == v);
}

TEST_CASE("single-mode commutator norm is 2 pi |lambda|") {
  for (Mode lam : {Mode{0, 0}, Mode{1, 0}, Mode{1, 1}, Mode{-2, 3}}) {
    const auto f = TorusPoly::mode(lam, 8);
    const double want = kTwoPi * std::hypot(double(lam.first), double(lam.second));
    CHECK(std::abs(torus_commutator_norm(f) - want) <= 1e-9 * std::max(1.0, want));
    CHECK(std::abs(torus_symbol_norm(f, 4) - want) <= 1e-9 * std::max(1.0, want));
  }
  CHECK(torus_commutator_norm(TorusPoly::constant(3.0, 4)) == 0.0);
  CHECK_THROWS_AS(torus_commutator_norm(TorusPoly::mode({3, 0}, 4)), LabError);
}

TEST_CASE("truncated commutator norm is bounded by the symbol norm") {
  Rng rng(71);
  for (int t = 0; t < 5; ++t) {
    TorusPoly f;
    f.cutoff = 6;
    for (int j = 0; j < 4; ++j)
      f.coeffs[{rng.uniform_int(-2, 2), rng.uniform_int(-2, 2)}] += Complex(rng.normal(), rng.normal());
    CHECK(torus_commutator_norm(f) <= torus_symbol_norm(f, 128) + 1e-6);
  }
}

TEST_CASE("pullbacks compose") {
  const auto f = TorusPoly::mode({1, 2}, 1 << 20);
  const auto A = CatAuto::cat();
  CHECK(cat_pullback(f, A, 0).coeffs == f.coeffs);
  CHECK(cat_pullback(cat_pullback(f, A, 3), A, 2).coeffs == cat_pullback(f, A, 5).coeffs);
  CHECK(cat_pullback(cat_pullback(f, A, 4), A, -4).coeffs == f.coeffs);
  // alpha(e_lam) = e_{A^-T lam}
  const auto once = cat_pullback(f, A, 1);
  CHECK(once.coeffs.begin()->first == A.transpose().inverse().apply({1, 2}));
}

TEST_CASE("growth rates") {
  const auto f = TorusPoly::mode({1, 0}, 1LL << 40);
  const auto cat = growth_exponent(CatAuto::cat(), f, 12);
  CHECK(cat.ratio == doctest::Approx(largest_root(CatAuto::cat())).epsilon(1e-6));
  for (size_t k = 1; k < cat.norms.size(); ++k) CHECK(cat.norms[k] > cat.norms[k - 1]);
  const auto par = growth_exponent(CatAuto::parabolic(), f, 64);
  CHECK(std::abs(par.power - 1.0) <= 0.1);
  const auto id = growth_exponent(CatAuto::identity(), f, 8);
  CHECK(id.ratio == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(id.norms.front() == doctest::Approx(kTwoPi).epsilon(1e-12));
}
