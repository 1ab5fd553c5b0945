#include <doctest.h>

#include <numbers>

#include "smlab/crossed.hpp"
#include "support.hpp"

using namespace smlab;
using namespace smlab::crossed;
using namespace smlab::testing;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> sorted_eigenvalues(const CMatrix& m) {
  const RVector v = hermitian_eigenvalues(m);
  return {v.data(), v.data() + v.size()};
}

BaseTriple random_matrix_base(Rng& rng, int d) {
  return BaseTriple::matrix_algebra("random", random_hermitian(rng, d), random_unitary(rng, d));
}

double norm_of_coeff_sum(const CrossedElement& b, int d) {
  double s = 0.0;
  for (const auto& [l, c] : b.coeffs) s += operator_norm(c);
  (void)d;
  return s;
}

}  // namespace

TEST_CASE("D-hat spectrum: closed cases") {
  const auto zero = BaseTriple::diagonal("zero", CMatrix::Zero(1, 1), {0});
  const auto s0 = sorted_eigenvalues(assemble_dhat(zero, 1).matrix);
  const std::vector<double> e0 = {-1, -1, 0, 0, 1, 1};
  for (size_t i = 0; i < e0.size(); ++i) CHECK(std::abs(s0[i] - e0[i]) <= 1e-14);

  const auto s3 = BaseTriple::diagonal("s3", spin::sigma3(), {0, 1});
  const auto v3 = sorted_eigenvalues(assemble_dhat(s3, 0).matrix);
  const std::vector<double> e3 = {-1, -1, 1, 1};
  for (size_t i = 0; i < e3.size(); ++i) CHECK(std::abs(v3[i] - e3[i]) <= 1e-14);

  // lambda in {-1, 2}: block n = 3 contributes +-sqrt 10 and +-sqrt 13
  CMatrix D = CMatrix::Zero(2, 2);
  D(0, 0) = -1.0;
  D(1, 1) = 2.0;
  const auto b = BaseTriple::diagonal("d", D, {0, 1});
  const auto dh = assemble_dhat(b, 3);
  const int blk = (3 + 3) * 4;
  const auto v = sorted_eigenvalues(dh.matrix.block(blk, blk, 4, 4));
  CHECK(v[0] == doctest::Approx(-std::sqrt(13.0)).epsilon(1e-14));
  CHECK(v[1] == doctest::Approx(-std::sqrt(10.0)).epsilon(1e-14));
  CHECK(v[3] == doctest::Approx(std::sqrt(13.0)).epsilon(1e-14));
  CHECK(hermiticity_defect(dh.matrix) == 0.0);
}

TEST_CASE("D-hat spectrum matches sqrt(lambda^2 + n^2) for random bases") {
  Rng rng(41);
  for (int t = 0; t < 3; ++t) {
    const auto base = random_matrix_base(rng, 4);
    const int N = 5;
    const auto got = sorted_eigenvalues(assemble_dhat(base, N).matrix);
    const auto lam = sorted_eigenvalues(base.D());
    std::vector<double> want;
    for (int n = -N; n <= N; ++n)
      for (double l : lam) {
        want.push_back(std::hypot(l, double(n)));
        want.push_back(-std::hypot(l, double(n)));
      }
    std::sort(want.begin(), want.end());
    REQUIRE(got.size() == want.size());
    for (size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-9 * std::max(1.0, std::abs(want[i])));
    CHECK(dhat_spectrum_check(base, N).max_rel_error <= 1e-9);
  }
}

TEST_CASE("shift and dual action identities") {
  for (const auto& base : standard_bases()) {
    const RegularRep rep(base, 4);
    CHECK(shift_identity_defect(rep) == 0.0);
    Rng rng(42);
    const CMatrix a = base.random_element(rng);
    const CMatrix pa = rep.pi(CrossedElement::base(a));
    const CMatrix pu = rep.pi(CrossedElement::monomial(CMatrix::Identity(base.dim(), base.dim()), 1));
    CHECK(max_diff(rep.dual_unitary(0.0), CMatrix::Identity(rep.dim(), rep.dim())) == 0.0);
    for (double k : {0.4, 1.3, kPi}) {
      const CMatrix v = rep.dual_unitary(k);
      CHECK(max_diff(v * pa * v.adjoint(), pa) <= 1e-14);
      CHECK(max_diff(v * pu * v.adjoint(), std::polar(1.0, k) * pu) <= 1e-12);
      CHECK(max_abs(commutator(v, rep.dhat().matrix)) == 0.0);
    }
    const CMatrix vpi = rep.dual_unitary(kPi);
    CHECK(max_diff(vpi * pu * vpi.adjoint(), -pu) <= 1e-12);
  }
}

TEST_CASE("commutator with a base element is the blockwise maximum") {
  Rng rng(43);
  for (const auto& base : standard_bases()) {
    const RegularRep rep(base, 4);
    const CMatrix id = CMatrix::Identity(base.dim(), base.dim());
    CHECK(max_abs(commutator_dhat(CrossedElement::base(id), rep)) <= 1e-14);
    for (int t = 0; t < 5; ++t) {
      const CMatrix a = base.random_element(rng);
      double oracle = 0.0;
      for (int n = -4; n <= 4; ++n) oracle = std::max(oracle, operator_norm(commutator(base.D(), base.alpha(a, -n))));
      CHECK(std::abs(operator_norm(commutator_dhat(CrossedElement::base(a), rep)) - oracle) <= 1e-10);
      CHECK(std::abs(blockwise_commutator_norm(a, base, 4) - oracle) <= 1e-12);
    }
  }
}

TEST_CASE("conditional expectation and Fourier coefficients") {
  Rng rng(44);
  const auto bases = standard_bases();
  for (const auto& base : bases) {
    const int d = base.dim();
    const CMatrix a = base.random_element(rng);
    CHECK(max_abs(conditional_expectation(CrossedElement::monomial(a, 1), base)) == 0.0);
    const auto b = random_element(base, rng, 5, 3);
    for (int l = -3; l <= 3; ++l) CHECK(max_diff(fourier_coefficient(b, l, base), b.coefficient(l, d)) <= 1e-14);

    // E(b b*) = sum_l b_l b_l^*
    CMatrix sum = CMatrix::Zero(d, d);
    for (const auto& [l, c] : b.coeffs) sum += c * c.adjoint();
    CHECK(max_diff(conditional_expectation(product(b, adjoint(b, base), base), base), sum) <= 1e-12);

    // bimodule property
    const CMatrix x = base.random_element(rng), y = base.random_element(rng);
    const auto xby = product(product(CrossedElement::base(x), b, base), CrossedElement::base(y), base);
    CHECK(max_diff(conditional_expectation(xby, base), x * b.coefficient(0, d) * y) <= 1e-12);

    // contraction at the window
    const RegularRep rep(base, 12);
    CHECK(operator_norm(conditional_expectation(b, base)) <= rep.norm(b) + 1e-12);
    CHECK(rep.norm(b) <= norm_of_coeff_sum(b, d) + 1e-12);
  }
}

TEST_CASE("derivation") {
  Rng rng(45);
  for (const auto& base : standard_bases()) {
    const int d = base.dim();
    const CMatrix a = base.random_element(rng);
    CHECK(derivation(CrossedElement::base(a)).coefficient(0, d).cwiseAbs().maxCoeff() == 0.0);
    const auto m3 = derivation(CrossedElement::monomial(a, 3));
    CHECK(max_diff(m3.coefficient(3, d), Complex(0.0, 3.0) * a) == 0.0);
    for (int t = 0; t < 10; ++t) {
      const auto b = random_element(base, rng, 4, 3), c = random_element(base, rng, 4, 3);
      const auto lhs = derivation(product(b, c, base));
      const auto rhs = add(product(derivation(b), c, base), product(b, derivation(c), base));
      CHECK(max_coeff_difference(lhs, rhs, d) <= 1e-10);
      CHECK(max_coeff_difference(derivation(adjoint(b, base)), adjoint(derivation(b), base), d) <= 1e-12);
    }
  }
}

TEST_CASE("crossed product is associative and alpha-covariant") {
  Rng rng(46);
  for (const auto& base : standard_bases()) {
    const int d = base.dim();
    const auto b = random_element(base, rng, 3, 2), c = random_element(base, rng, 3, 2), e = random_element(base, rng, 3, 2);
    CHECK(max_coeff_difference(product(product(b, c, base), e, base), product(b, product(c, e, base), base), d) <= 1e-12);
    // u a u^-1 = alpha(a)
    const CMatrix a = base.random_element(rng);
    const CMatrix id = CMatrix::Identity(d, d);
    const auto uau = product(product(CrossedElement::monomial(id, 1), CrossedElement::base(a), base),
                             CrossedElement::monomial(id, -1), base);
    CHECK(max_diff(uau.coefficient(0, d), base.alpha(a)) <= 1e-14);
  }
}

TEST_CASE("Fejer kernel") {
  for (double k : {-2.0, -0.3, 0.7, 3.0}) CHECK(fejer_kernel(1, k) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fejer_kernel(2, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
  for (int N : {1, 3, 8, 20})
    for (int i = -50; i <= 50; ++i) {
      const double k = kPi * i / 50.0;
      double cos_sum = 1.0;  // 1 + 2 sum_{l=1}^{N-1} (1 - l/N) cos(lk)
      for (int l = 1; l < N; ++l) cos_sum += 2.0 * (1.0 - double(l) / N) * std::cos(l * k);
      CHECK(fejer_kernel(N, k) >= 0.0);
      CHECK(std::abs(fejer_kernel(N, k) - cos_sum) <= 1e-10);
      CHECK(std::abs(fejer_kernel_cosine_form(N, k) - cos_sum) <= 1e-10);
    }
  for (int N : {4, 16, 64}) {
    CHECK(std::abs(fejer_mean(N) - 1.0) <= 1e-8);
    // tail mass by a fine midpoint rule, symmetric in k
    const double a = kPi / std::sqrt(double(N));
    const int m = 200000;
    double tail = 0.0;
    for (int i = 0; i < m; ++i) tail += fejer_kernel(N, a + (kPi - a) * (i + 0.5) / m);
    tail *= 2.0 * (kPi - a) / m / (2.0 * kPi);
    CHECK(std::abs(fejer_tail_mass(N) - tail) <= 1e-8);
    CHECK(fejer_tail_mass(N) <= 1.0 / std::sqrt(double(N)) + 1e-8);
  }
}

TEST_CASE("Fejer approximants") {
  Rng rng(47);
  const auto base = standard_bases()[0];
  const int d = base.dim();
  const auto b = random_element(base, rng, 5, 3);
  const auto b2 = fejer_approximant(b, 2);
  for (int l = -3; l <= 3; ++l) {
    const double w = std::abs(l) < 2 ? 1.0 - std::abs(l) / 2.0 : 0.0;
    CHECK(max_diff(b2.coefficient(l, d), w * b.coefficient(l, d)) <= 1e-15);
  }
  const RegularRep rep(base, 16);
  for (int t = 0; t < 5; ++t) {
    const auto c = random_element(base, rng, 5, 4);
    double prev = 1e300;
    for (int N = c.support_radius() + 1; N <= 16; ++N) {
      const double e = rep.norm(add(c, fejer_approximant(c, N), -1.0));
      CHECK(e <= prev + 1e-12);
      prev = e;
    }
  }
}

TEST_CASE("Sobolev and Fejer approximation bounds") {
  const auto base = standard_bases()[1];
  const int d = base.dim();
  const auto single = CrossedElement::monomial(CMatrix::Identity(d, d), 1);
  const auto rep = verify_approximation_bounds(single, base, 8, {2, 4});
  REQUIRE(rep.checks.front().name == "sobolev");
  CHECK(rep.checks.front().lhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.checks.front().rhs == doctest::Approx(kPi * kPi / 3.0).epsilon(1e-12));
  CHECK(rep.min_slack() >= -1e-9);

  const auto in_a = verify_approximation_bounds(CrossedElement::base(CMatrix::Identity(d, d)), base, 8, {2});
  CHECK(in_a.checks.front().lhs <= 1e-24);

  Rng rng(48);
  for (const auto& b3 : standard_bases())
    for (int t = 0; t < 6; ++t) {
      const auto b = random_element(b3, rng, 5, 4);
      CHECK(verify_approximation_bounds(b, b3, 16, {2, 4, 8}).min_slack() >= -1e-9);
    }
  CHECK_THROWS_AS(verify_approximation_bounds(random_element(base, rng, 1, 5), base, 8, {2}), LabError);
}

TEST_CASE("B(K) projection") {
  Rng rng(49);
  const auto base = standard_bases()[2];
  const RegularRep rep(base, 16);
  const auto bk = project_to_bk(random_element(base, rng, 5, 4), rep);
  CHECK(bk.coeffs.count(0) == 0);
  for (const auto& [l, c] : bk.coeffs) CHECK(operator_norm(c) <= 1.0 / std::abs(l) + 1e-12);
  CHECK(rep.norm(derivation(bk)) <= 1.0 + 1e-12);
}

TEST_CASE("D-hat commutant is trivial on the truncation") {
  for (const auto& base : standard_bases()) CHECK(dhat_commutant_dimension(base, 3, 1) == 1);
}

TEST_CASE("metric equivalence witness") {
  Rng rng(50);
  const auto eq = metric_equivalence_witness(standard_bases()[1], rng, 30);
  CHECK(eq.worst_lower <= 1e-9);
  CHECK(eq.worst_upper <= 1e-9);
  CHECK(eq.K >= 1.0);
  CHECK(eq.pairs > 0);
  CHECK_THROWS_AS(metric_equivalence_witness(standard_bases()[0], rng, 5), LabError);
}
