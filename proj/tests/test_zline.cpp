#include <doctest.h>

#include "smlab/zline.hpp"
#include "support.hpp"

using namespace smlab;
using namespace smlab::zline;

namespace {

ZMetric unit_gaps(int N) {
  return ZMetric::path_gaps(-N, N, [](int) { return 1.0; });
}

Sequence interior_random(Rng& rng, const Window& w, int margin) {
  Sequence a(static_cast<size_t>(w.size()), 0.0);
  for (int n = w.lo() + margin; n <= w.hi() - margin; ++n) a[w.slot(n)] = rng.uniform(-1.0, 1.0);
  return a;
}

}  // namespace

TEST_CASE("path_metric sums gaps") {
  CHECK(path_metric(0, 3, unit_gaps(4)) == 3.0);
  const auto m = ZMetric::path_gaps(0, {1.0, 0.5});
  CHECK(path_metric(0, 2, m) == 1.5);
  Rng rng(21);
  std::vector<double> gaps(16);
  for (auto& g : gaps) g = rng.uniform(0.1, 3.0);
  const auto r = ZMetric::path_gaps(-8, gaps);
  for (int t = 0; t < 50; ++t) {
    const int a = static_cast<int>(rng.uniform_int(-8, 8)), b = static_cast<int>(rng.uniform_int(-8, 8));
    const int c = static_cast<int>(rng.uniform_int(std::min(a, b), std::max(a, b)));
    CHECK(path_metric(a, b, r) == path_metric(b, a, r));
    CHECK(path_metric(a, a, r) == 0.0);
    CHECK(path_metric(a, b, r) == doctest::Approx(path_metric(a, c, r) + path_metric(c, b, r)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(path_metric(0, 20, r), LabError);
}

TEST_CASE("shift-invariant profiles must be subadditive") {
  CHECK_THROWS_AS(ZMetric::shift_invariant({0.0, 1.0, 3.0}), LabError);
  CHECK_NOTHROW(ZMetric::shift_invariant({0.0, 1.0, 2.0}));
  CHECK_THROWS_AS(ZMetric::shift_invariant({0.5, 1.0}), LabError);
}

TEST_CASE("D_lambda is Hermitian and the resolvent hypothesis holds") {
  const Window w(8);
  const auto metric = unit_gaps(8);
  WeightSeq c{w.lo(), {}};
  for (int n = w.lo(); n <= w.hi(); ++n) c.c.push_back(std::max(1, std::abs(n)));
  const auto d = build_dirac_lambda(metric, w, c, 1.0);
  CHECK(hermiticity_defect(d.matrix) <= 1e-12);
  CHECK(resolvent_bound_ratio(metric, w, c) <= 1.0);

  // Direct evaluation of |i - c_n c_{n+1}|^-2 delta_n^-2 against c_{n+1}^-2.
  for (int n = w.lo() + 1; n < w.hi(); ++n) {
    const double cc = c.at(n) * c.at(n + 1);
    CHECK(1.0 / std::norm(Complex(-cc, 1.0)) <= 1.0 / (c.at(n + 1) * c.at(n + 1)));
  }

  CHECK_THROWS_AS(build_dirac_lambda(metric, w, c, 0.0), LabError);
  WeightSeq small = c;
  small.c[static_cast<size_t>(w.slot(0))] = 0.5;
  CHECK_THROWS_AS(build_dirac_lambda(metric, w, small, 1.0), LabError);
}

TEST_CASE("D_lambda spectrum grows with the window") {
  const auto m16 = unit_gaps(16);
  const Window w8(8), w16(16);
  const auto s8 = sorted_abs_spectrum(build_dirac_lambda(m16, w8, default_weights(m16, w8), 1.0));
  const auto s16 = sorted_abs_spectrum(build_dirac_lambda(m16, w16, default_weights(m16, w16), 1.0));
  CHECK(s16[4] >= s8[4] - 1e-12);
}

TEST_CASE("default weights satisfy the hypotheses") {
  Rng rng(22);
  std::vector<double> gaps(20);
  for (auto& g : gaps) g = rng.uniform(0.05, 4.0);
  const auto metric = ZMetric::path_gaps(-10, gaps);
  const Window w(10);
  const auto c = default_weights(metric, w);
  CHECK_NOTHROW(validate_weights(c, metric, w));
}

TEST_CASE("consecutive seminorm equals the D_lambda commutator norm") {
  const Window w(6);
  SUBCASE("closed form") {
    const auto metric = ZMetric::path_gaps(-6, 6, [](int) { return 0.5; });
    Sequence a(static_cast<size_t>(w.size()), 0.0);
    a[w.slot(1)] = 1.0;
    CHECK(lipschitz_seminorm_consecutive(a, metric, w) == 2.0);
    CHECK(lipschitz_seminorm_consecutive(Sequence(static_cast<size_t>(w.size()), 0.0), metric, w) == 0.0);
  }
  SUBCASE("operator-norm oracle") {
    Rng rng(23);
    std::vector<double> gaps(12);
    for (auto& g : gaps) g = rng.uniform(0.2, 2.0);
    const auto metric = ZMetric::path_gaps(-6, gaps);
    const auto d = build_dirac_lambda(metric, w, default_weights(metric, w), 1.0);
    for (int t = 0; t < 100; ++t) {
      const auto a = interior_random(rng, w, 1);
      const double norm = operator_norm(commutator(d.matrix, multiplication_operator(a, d)));
      CHECK(std::abs(norm - lipschitz_seminorm_consecutive(a, metric, w)) <= 1e-10);
    }
  }
}

TEST_CASE("all-pairs seminorm equals the D_K commutator norm") {
  const Window w(4);
  const auto metric = ZMetric::tanh_metric(8);
  Sequence ind(static_cast<size_t>(w.size()), 0.0);
  ind[w.slot(0)] = 1.0;
  CHECK(lipschitz_seminorm_allpairs(ind, metric, w) == doctest::Approx(1.0 / std::tanh(1.0)).epsilon(1e-14));
  CHECK(lipschitz_seminorm_allpairs(Sequence(static_cast<size_t>(w.size()), 0.7), metric, w) == 0.0);

  const auto dk = build_dirac_K(metric, w, 8, 1.0);
  CHECK(hermiticity_defect(dk.matrix) <= 1e-12);
  Rng rng(24);
  for (int t = 0; t < 50; ++t) {
    const auto a = interior_random(rng, w, 1);
    const double norm = operator_norm(commutator(dk.matrix, multiplication_operator(a, dk)));
    CHECK(std::abs(norm - lipschitz_seminorm_allpairs(a, metric, w)) <= 1e-8);
  }
  CHECK_THROWS_AS(build_dirac_K(metric, w, 9, 1.0), LabError);
}

TEST_CASE("D_K with one range carries the D_lambda difference pattern") {
  const Window w(3);
  const auto metric = ZMetric::tanh_metric(6);
  const auto dk = build_dirac_K(metric, w, 1, 1.0);
  const auto comps = partial_trace_spin(dk.matrix, spin::clifford_basis());
  // gamma_1 and gamma_2 parts combine to the difference operator nabla.
  const CMatrix nabla = comps[1] - kI * comps[2];
  for (int n = w.lo() + 1; n <= w.hi(); ++n) {
    const double inv = 1.0 / metric(n, n - 1);
    CHECK(std::abs(nabla(w.slot(n), w.slot(n)) - Complex(inv)) <= 1e-14);
    CHECK(std::abs(nabla(w.slot(n), w.slot(n - 1)) + Complex(inv)) <= 1e-14);
  }
}

TEST_CASE("ball witnesses") {
  const Window w(11);
  const auto unit = unit_gaps(11);
  const auto a5 = ball_witness(unit, w, 5, WitnessVariant::Path);
  CHECK(sup_norm(a5) == 5.0);
  CHECK(lipschitz_seminorm_consecutive(a5, unit, w) <= 1.0 + 1e-12);

  const auto summable = ZMetric::path_gaps(-11, 11, [](int n) { return std::ldexp(1.0, -std::max(std::abs(n), std::abs(n - 1))); });
  const auto th = ZMetric::tanh_metric(22);
  for (int R = 1; R <= 5; ++R) {
    const auto as = ball_witness(summable, w, R, WitnessVariant::Path);
    double expect = 0.0;
    for (int j = 1; j <= R; ++j) expect += summable.gap(j);
    CHECK(sup_norm(as) == doctest::Approx(expect).epsilon(1e-15));
    CHECK(sup_norm(as) <= 1.0);
    const auto at = ball_witness(th, w, R, WitnessVariant::AllPairs);
    CHECK(sup_norm(at) == doctest::Approx(std::tanh(double(R))).epsilon(1e-15));
    CHECK(lipschitz_seminorm_allpairs(at, th, w) <= 1.0 + 1e-12);
  }
  CHECK_THROWS_AS(ball_witness(unit, w, 6, WitnessVariant::Path), LabError);
}

TEST_CASE("every Lipschitz-1 sequence is bounded by the gap sum (summable gaps)") {
  const Window w(10);
  const auto summable = ZMetric::path_gaps(-10, 10, [](int n) { return std::ldexp(1.0, -std::max(std::abs(n), std::abs(n - 1))); });
  double total = 0.0;
  for (int n = w.lo() + 1; n <= w.hi(); ++n) total += summable.gap(n);
  Rng rng(25);
  for (int t = 0; t < 100; ++t) {
    Sequence a(static_cast<size_t>(w.size()));
    for (auto& x : a) x = rng.uniform(-1.0, 1.0);
    const double s = lipschitz_seminorm_consecutive(a, summable, w);
    for (auto& x : a) x /= s;
    // pin the sequence to 0 somewhere, as the Lipschitz ball is taken modulo constants
    const double shift = a[w.slot(0)];
    for (auto& x : a) x -= shift;
    CHECK(sup_norm(a) <= total + 1e-12);
  }
}
