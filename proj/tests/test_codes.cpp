#include <doctest.h>

#include <cmath>

#include "smlab/codes.hpp"
#include "smlab/error.hpp"

using namespace smlab;
using namespace smlab::codes;

TEST_CASE("parse and format") {
  const Code c = parse_code("3 2\n01\n12\n20\n");
  REQUIRE(c.size() == 3);
  CHECK(c.q == 3);
  CHECK(c.words[2] == Word{2, 0});
  CHECK_THROWS_AS(parse_code("3 2\n01\n2a\n"), LabError);  // digit 'a' = 10 >= q
  CHECK(parse_code("12 1\na\n").words[0] == Word{10});
  const Code h = hamming74();
  CHECK(parse_code(format_code(h)).words == h.words);
  CHECK_THROWS_AS(parse_code("2 2\n01\n01\n"), LabError);
  CHECK_THROWS_AS(parse_code("2 3\n01\n"), LabError);
  CHECK_THROWS_AS(parse_code("1 3\n000\n"), LabError);
}

TEST_CASE("parameters of small codes") {
  const auto r = code_params(repetition_code(3));
  CHECK(r.k == 1.0);
  CHECK(r.d == 3);
  CHECK(r.R == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(r.delta == 1.0);

  const Code h = hamming74();
  CHECK(h.size() == 16);
  int min_weight = 7;
  const Word zero(7, 0);
  for (const auto& w : h.words)
    if (w != zero) min_weight = std::min(min_weight, hamming(w, zero));
  // linear: closed under addition
  for (const auto& x : h.words)
    for (const auto& y : h.words) {
      Word s(7);
      for (int i = 0; i < 7; ++i) s[i] = (x[i] + y[i]) % 2;
      CHECK(std::find(h.words.begin(), h.words.end(), s) != h.words.end());
    }
  const auto p = code_params(h);
  CHECK(p.d == min_weight);
  CHECK(p.k == 4.0);
  CHECK(p.R == doctest::Approx(4.0 / 7.0).epsilon(1e-15));
  CHECK(log_q_size(full_cube(3, 3)) == 3.0);
}

TEST_CASE("structure function and entropy") {
  CHECK(structure_function(repetition_code(3), 6) == 4);
  CHECK(structure_function(full_cube(2), 6) == 64);
  CHECK(structure_function(full_cube(2, 3), 4) == 81);
  const auto er = entropy(repetition_code(3), 5);
  CHECK(er.root_test.size() == 5);
  CHECK(er.entropy == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(entropy(hamming74(), 3).entropy == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
  CHECK(entropy(full_cube(3), 3).entropy == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zeta function") {
  const Code h = hamming74();
  const double R = 4.0 / 7.0;
  for (double s : {R + 0.1, R + 0.5, R + 1.0}) {
    const auto z = code_zeta(h, s, 8);
    const double x = 16.0 * std::pow(2.0, -7.0 * s);
    double partial = 0.0;
    for (int m = 1; m <= 8; ++m) partial += std::pow(x, m);
    CHECK(z.x == doctest::Approx(x).epsilon(1e-14));
    CHECK(z.partial == doctest::Approx(partial).epsilon(1e-13));
    CHECK(z.closed == doctest::Approx(x / (1.0 - x)).epsilon(1e-13));
    CHECK(z.slack >= -1e-12);
    CHECK_FALSE(z.divergent);
    CHECK(z.corrected_form == doctest::Approx(1.0 + z.closed).epsilon(1e-12));
  }
  const auto at_r = code_zeta(h, R, 4);
  CHECK(at_r.divergent);
  CHECK(std::isinf(at_r.closed));
}

TEST_CASE("Hausdorff dimension and coordinate planes") {
  const auto hd = hausdorff_dims(hamming74());
  CHECK(hd.dim == 4.0);
  CHECK(hd.normalized == doctest::Approx(4.0 / 7.0).epsilon(1e-15));

  CHECK(coordinate_plane_check(full_cube(3), 2).max_points == 4);
  CHECK(coordinate_plane_check(repetition_code(3), 2).max_points == 1);
  // distance d forces at most q^(ell - d + 1) codewords on an ell-plane
  const Code h = hamming74();
  for (int ell = 0; ell <= 7; ++ell) {
    const auto pr = coordinate_plane_check(h, ell);
    CHECK(pr.max_points <= (1 << std::max(0, ell - 2)));
    CHECK(pr.free_coords.size() == size_t(ell));
  }
  CHECK(coordinate_plane_check(h, 7).max_points == 16);
}

TEST_CASE("extended codes") {
  for (const Code& c : {repetition_code(3), hamming74()}) {
    const auto p = code_params(c);
    for (int m = 1; m <= 3; ++m) {
      if (std::pow(double(c.size()), m) > 1e6) continue;
      const Code e = extend_code(c, m);
      CHECK_NOTHROW(e.check());
      CHECK(e.q == int(std::lround(std::pow(c.q, m))));
      CHECK(e.n == c.n);
      CHECK(double(e.size()) == std::pow(double(c.size()), m));
      const auto pe = code_params(e);
      CHECK(pe.d == p.d);
      CHECK(pe.R == doctest::Approx(p.R).epsilon(1e-12));
    }
  }
}
