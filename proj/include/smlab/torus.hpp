#pragma once

// Toral automorphisms acting on trigonometric polynomials of T^2, with the
// Dirac operator D e_lam = 2 pi (lam_1 sigma_1 + lam_2 sigma_2) e_lam and
// e_{n,m}(x) = exp(2 pi i (n x_1 + m x_2)).

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "smlab/operator_core.hpp"

namespace smlab::torus {

using Mode = std::pair<long long, long long>;

struct TorusPoly {
  std::map<Mode, Complex> coeffs;
  long long cutoff = 8;

  static TorusPoly mode(Mode lam, long long cutoff, Complex c = 1.0);
  static TorusPoly constant(Complex c, long long cutoff);
  /// max over the support of max(|n|, |m|); 0 for the zero polynomial.
  long long support_radius() const;
  /// Throws CutoffTooSmall if a mode lies outside |n|, |m| <= cutoff.
  void check() const;
};

/// Coefficient convolution; the cutoff of the result is the larger one and
/// must hold the product's support.
TorusPoly multiply(const TorusPoly& f, const TorusPoly& g);

/// Integer 2x2 matrix [[a, b], [c, d]] with det = +-1.
class CatAuto {
 public:
  CatAuto(long long a, long long b, long long c, long long d);
  static CatAuto cat() { return {2, 1, 1, 1}; }
  static CatAuto parabolic() { return {1, 1, 0, 1}; }
  static CatAuto identity() { return {1, 0, 0, 1}; }

  long long det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
  const std::array<long long, 4>& entries() const { return m_; }
  CatAuto inverse() const;
  CatAuto transpose() const { return {m_[0], m_[2], m_[1], m_[3]}; }
  Mode apply(Mode v) const { return {m_[0] * v.first + m_[1] * v.second, m_[2] * v.first + m_[3] * v.second}; }
  /// Largest eigenvalue modulus.
  double spectral_radius() const;

 private:
  std::array<long long, 4> m_;
};

/// [D, pi(f)] assembled on modes |n|, |m| <= f.cutoff (spin innermost).
CMatrix torus_commutator_matrix(const TorusPoly& f);

/// ||[D, pi(f)]|| on the truncated mode space. Requires cutoff >= 2 * radius.
double torus_commutator_norm(const TorusPoly& f);

/// sup over a grid x of ||sum c_mu 2 pi (mu . sigma) e_mu(x)||. Exact for one
/// mode at any grid size; needs no mode truncation.
double torus_symbol_norm(const TorusPoly& f, int grid = 32);

/// alpha^k f with alpha(a)(x) = a(A^-1 x): mode lam goes to (A^T)^-k lam.
TorusPoly cat_pullback(const TorusPoly& f, const CatAuto& A, int k);

struct GrowthReport {
  std::vector<double> norms;  // ||[D, alpha^k f]|| for k = 0..kmax
  double ratio = 0.0;         // norms[kmax] / norms[kmax - 1]
  double power = 0.0;         // least-squares slope of log norm vs log k on [kmax/2, kmax]
  double spectral_radius = 0.0;
};

GrowthReport growth_exponent(const CatAuto& A, const TorusPoly& f, int kmax);

}  // namespace smlab::torus
