#pragma once

// Block codes C in {0..q-1}^n given as word lists (nonlinear codes allowed).

#include <string>
#include <vector>

namespace smlab::codes {

using Word = std::vector<int>;

struct Code {
  int q = 2;
  int n = 0;
  std::vector<Word> words;

  /// Throws InvalidCode unless q >= 2, n >= 1, #C >= 1, and every word has
  /// length n, digits in [0, q) and no repeats.
  void check() const;
  size_t size() const { return words.size(); }
};

/// Header line "q n", then one codeword per line, digits 0-9 then a-z.
Code parse_code(const std::string& text);
Code load_code(const std::string& path);
std::string format_code(const Code& c);

Code repetition_code(int n, int q = 2);
/// All 16 codewords m G of the [7,4] Hamming code, G = [I_4 | P].
Code hamming74();
Code full_cube(int n, int q = 2);

int hamming(const Word& x, const Word& y);

struct CodeParams {
  double k = 0.0;  // log_q #C, exact when #C is a power of q
  int d = 0;
  double R = 0.0, delta = 0.0;
};

CodeParams code_params(const Code& c);

/// log_q(#C), exact when #C is a power of q.
double log_q_size(const Code& c);

/// Number of distinct strings of length N that are concatenations of
/// codewords, by explicit enumeration. Throws TooLarge past 10^6 strings.
long long structure_function(const Code& c, int N);

struct EntropyEstimate {
  std::vector<double> root_test;  // -log_q (s_C(nm))^{-1/(nm)} for m = 1..m_max
  double entropy = 0.0;           // last root-test value
};

/// Root test on the structure function; counts beyond the enumeration
/// guard use s_C(nm) = (#C)^m.
EntropyEstimate entropy(const Code& c, int m_max = 6);

struct ZetaReport {
  double x = 0.0;          // #C q^{-sn}
  double partial = 0.0;    // sum_{m=1}^{m_max} x^m
  double closed = 0.0;     // x / (1 - x), infinite when x >= 1
  double remainder_bound = 0.0;  // x^{m_max+1} / (1 - x)
  double slack = 0.0;      // remainder_bound - (closed - partial)
  bool divergent = false;  // s <= R
  double stated_form = 0.0;     // (1 - q^{R-s})^-1
  double corrected_form = 0.0;  // (1 - q^{(R-s) n})^-1
};

ZetaReport code_zeta(const Code& c, double s, int m_max);

struct HausdorffDims {
  double dim = 0.0;
  double normalized = 0.0;
};

HausdorffDims hausdorff_dims(const Code& c);

struct PlaneReport {
  int ell = 0;
  long long planes = 0;     // codeword-realized planes scanned
  int max_points = 0;       // largest #(C cap pi)
  std::vector<int> free_coords;   // witness plane attaining max_points
  std::vector<int> fixed_coords;
  std::vector<int> fixed_values;
};

/// Scans every axis-parallel plane of dimension ell that meets C: the free
/// coordinates are an ell-subset and the rest take the values of a codeword.
PlaneReport coordinate_plane_check(const Code& c, int ell);

/// C_(m)(u_1..u_m) = (C(u_1), ..., C(u_m)) over the alphabet q^m; symbol i is
/// sum_j digit_i(u_j) q^(j-1). Throws TooLarge if (#C)^m > 10^6.
Code extend_code(const Code& c, int m);

}  // namespace smlab::codes
