#include <doctest.h>

#include "smlab/rm_torus.hpp"
#include "support.hpp"

using namespace smlab;
using namespace smlab::rm;

namespace {

// Smallest a + b theta > 1 with norm +1, by search.
double fundamental_unit(double theta, double theta_conj) {
  double best = 1e300;
  for (long long a = -60; a <= 60; ++a)
    for (long long b = -60; b <= 60; ++b) {
      const double x = a + b * theta, y = a + b * theta_conj;
      if (x <= 1.0 + 1e-9 || std::abs(x * y - 1.0) > 1e-6) continue;
      best = std::min(best, x);
    }
  return best;
}

}  // namespace

TEST_CASE("real quadratic fields") {
  CHECK(rm_setup(2).theta == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(rm_setup(5).theta == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-15));
  CHECK(rm_setup(2).eps == doctest::Approx(3.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-14));
  for (int D : {2, 3, 5, 6, 7, 13}) {
    const auto f = rm_setup(D);
    CHECK(f.eps == doctest::Approx(fundamental_unit(f.theta, f.theta_conj)).epsilon(1e-12));
    CHECK(f.eps * f.eps_conj == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(f.det()) == 1);
    for (Mode v : {Mode{1, 0}, Mode{0, 1}, Mode{3, -2}}) {
      const auto e0 = f.embed(v), e1 = f.embed(f.act(v));
      CHECK(e1.first * e1.second == doctest::Approx(e0.first * e0.second).epsilon(1e-10));
      const double ratio = std::abs(e1.first / e0.first);
      CHECK((std::abs(ratio - f.eps) <= 1e-9 * f.eps || std::abs(ratio - 1.0 / f.eps) <= 1e-9));
      CHECK(f.act(f.act(v, 3), -3) == v);
    }
  }
  CHECK_THROWS_AS(rm_setup(4), LabError);
}

TEST_CASE("twisted translations satisfy the cocycle relation") {
  const double theta = std::sqrt(3.0);
  const auto p = twisted_mode_product({1, 2}, {-3, 1}, theta);
  CHECK(p.wedge == 7);
  CHECK(std::abs(p.phase - std::polar(1.0, -std::numbers::pi * theta * 7)) <= 1e-14);
  CHECK(p.sum == Mode{-2, 3});

  const ModeBox box(5);
  const Mode eta{1, -1}, lam{0, 2};
  const CMatrix re = CMatrix(twisted_translation(eta, box, theta));
  const CMatrix rl = CMatrix(twisted_translation(lam, box, theta));
  const CMatrix rs = CMatrix(twisted_translation({1, 1}, box, theta));
  const CMatrix lhs = re * rl;
  const Complex sigma = twisted_mode_product(eta, lam, theta).phase;
  for (long long n = -3; n <= 3; ++n)
    for (long long m = -3; m <= 2; ++m) {
      const int j = box.index({n, m});
      CHECK(max_abs(CMatrix(lhs.col(j) - sigma * rs.col(j))) <= 1e-14);
    }
}

TEST_CASE("commutator with a twisted translation is the embedded mode") {
  const auto f = rm_setup(5);
  const ModeBox box(4);
  CHECK(hermiticity_defect(rm_dirac(box, f).matrix) <= 1e-14);
  for (Mode eta : {Mode{1, 0}, Mode{0, 1}, Mode{2, -1}, Mode{0, 0}}) {
    const double x = eta.first + eta.second * f.theta, y = eta.first + eta.second * f.theta_conj;
    CHECK(rm_commutator_norm(eta, box, f) == doctest::Approx(std::hypot(x, y)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(rm_commutator_norm({9, 0}, box, f), LabError);
}

TEST_CASE("orbit norms grow by eps") {
  for (int D : {2, 5}) {
    const auto f = rm_setup(D);
    const auto norms = rm_orbit_norms({1, 0}, f, 12);
    CHECK(norms.size() == 13);
    CHECK(norms[12] / norms[11] == doctest::Approx(f.eps).epsilon(1e-6));
  }
}

TEST_CASE("crossed assembly identities") {
  Rng rng(91);
  for (int D : {2, 5}) {
    const auto f = rm_setup(D);
    const RMCrossed rc(f, 2, 5);
    CHECK(rc.dim() == 5 * 121 * 2);
    // alpha^-n must keep every mode inside the box, so only the inner sites are filled
    RMSequence b(5);
    for (size_t i = 1; i <= 3; ++i)
      for (Mode m : {Mode{0, 0}, Mode{1, 0}, Mode{0, 1}}) b[i][m] = Complex(rng.normal(), rng.normal());
    const auto rep = rm_crossed_check(rc, b);
    CHECK(rep.upsilon_defect <= 1e-12);
    CHECK(rep.covariance_defect <= 1e-12);
    // only ups^-1 b ups intertwines with alpha_*; the other order does not
    CHECK(rep.inverse_covariance_defect > 0.1);
    CHECK(rep.blockwise_defect <= 1e-12);
    CHECK(hermiticity_defect(CMatrix(rc.dhat())) <= 1e-14);
    RMSequence far(5);
    far[0][{3, 3}] = 1.0;
    CHECK_THROWS_AS(rc.represent(far), LabError);
  }
}

TEST_CASE("orbit decomposition") {
  for (int D : {2, 3, 5}) {
    const auto f = rm_setup(D);
    for (Mode lam : {Mode{1, 0}, Mode{5, 3}, Mode{-7, 2}, Mode{11, -8}}) {
      const auto od = orbit_decompose(lam, f);
      CHECK(f.act(od.mu, od.k) == lam);
      CHECK(od.t >= 0.0);
      CHECK(od.t < 1.0);
      const auto e = f.embed(lam);
      CHECK(od.norm == doctest::Approx(e.first * e.second).epsilon(1e-9));
      const double want = std::sqrt(std::abs(od.norm)) * std::hypot(std::pow(f.eps, od.k), std::pow(f.eps, -od.k));
      CHECK(operator_norm(rm_dmu_block(od.mu, od.k, f)) == doctest::Approx(want).epsilon(1e-10));
    }
  }
}
