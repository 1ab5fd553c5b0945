#include "smlab/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "smlab/error.hpp"

namespace smlab::torus {

using spin::sigma1;
using spin::sigma2;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

long long radius_of(Mode m) { return std::max(std::llabs(m.first), std::llabs(m.second)); }

CMatrix mode_symbol(Mode mu) {
  return kTwoPi * (static_cast<double>(mu.first) * sigma1() + static_cast<double>(mu.second) * sigma2());
}

}  // namespace

TorusPoly TorusPoly::mode(Mode lam, long long cutoff, Complex c) {
  TorusPoly f;
  f.cutoff = cutoff;
  f.coeffs[lam] = c;
  f.check();
  return f;
}

TorusPoly TorusPoly::constant(Complex c, long long cutoff) { return mode({0, 0}, cutoff, c); }

long long TorusPoly::support_radius() const {
  long long r = 0;
  for (const auto& [m, c] : coeffs) r = std::max(r, radius_of(m));
  return r;
}

void TorusPoly::check() const {
  if (cutoff < 0) fail(ErrorCode::CutoffTooSmall, "negative mode cutoff");
  if (support_radius() > cutoff) fail(ErrorCode::CutoffTooSmall, "support exceeds the mode cutoff");
}

TorusPoly multiply(const TorusPoly& f, const TorusPoly& g) {
  TorusPoly out;
  out.cutoff = std::max(f.cutoff, g.cutoff);
  for (const auto& [a, ca] : f.coeffs)
    for (const auto& [b, cb] : g.coeffs) out.coeffs[{a.first + b.first, a.second + b.second}] += ca * cb;
  out.check();
  return out;
}

CatAuto::CatAuto(long long a, long long b, long long c, long long d) : m_{a, b, c, d} {
  if (std::llabs(det()) != 1) fail(ErrorCode::ConfigInvalid, "automorphism matrix must have det +-1");
}

CatAuto CatAuto::inverse() const {
  const long long D = det();
  return {D * m_[3], -D * m_[1], -D * m_[2], D * m_[0]};
}

double CatAuto::spectral_radius() const {
  const double tr = static_cast<double>(m_[0] + m_[3]);
  const double disc = tr * tr - 4.0 * static_cast<double>(det());
  if (disc < 0.0) return std::sqrt(std::abs(static_cast<double>(det())));
  return (std::abs(tr) + std::sqrt(disc)) / 2.0;
}

CMatrix torus_commutator_matrix(const TorusPoly& f) {
  f.check();
  const long long M = f.cutoff;
  const long long side = 2 * M + 1;
  const long long dim = side * side * 2;
  if (dim > 20000) fail(ErrorCode::TooLarge, "mode cutoff too large for dense assembly");
  CMatrix out = CMatrix::Zero(dim, dim);
  auto base = [&](long long n, long long m) { return ((n + M) * side + (m + M)) * 2; };
  for (long long n = -M; n <= M; ++n)
    for (long long m = -M; m <= M; ++m)
      for (const auto& [mu, c] : f.coeffs) {
        const long long tn = n + mu.first, tm = m + mu.second;
        if (std::llabs(tn) > M || std::llabs(tm) > M) continue;
        // D(lam + mu) - D(lam) = 2 pi (mu . sigma)
        out.block(base(tn, tm), base(n, m), 2, 2) += c * mode_symbol(mu);
      }
  return out;
}

double torus_commutator_norm(const TorusPoly& f) {
  f.check();
  if (f.cutoff < 2 * f.support_radius())
    fail(ErrorCode::CutoffTooSmall, "mode cutoff must be at least twice the support radius");
  return operator_norm(torus_commutator_matrix(f));
}

double torus_symbol_norm(const TorusPoly& f, int grid) {
  if (grid < 1) fail(ErrorCode::ConfigInvalid, "grid must be positive");
  double best = 0.0;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const double x1 = static_cast<double>(i) / grid, x2 = static_cast<double>(j) / grid;
      CMatrix s = CMatrix::Zero(2, 2);
      for (const auto& [mu, c] : f.coeffs) {
        // reduce the phase mod 1 in integer arithmetic before scaling
        const double ph = std::fmod(static_cast<double>(mu.first) * x1 + static_cast<double>(mu.second) * x2, 1.0);
        s += c * std::polar(1.0, kTwoPi * ph) * mode_symbol(mu);
      }
      best = std::max(best, operator_norm(s));
    }
  return best;
}

TorusPoly cat_pullback(const TorusPoly& f, const CatAuto& A, int k) {
  // (A^T)^-k
  const CatAuto step = k >= 0 ? A.transpose().inverse() : A.transpose();
  TorusPoly out;
  out.cutoff = f.cutoff;
  for (const auto& [lam, c] : f.coeffs) {
    Mode v = lam;
    for (int i = 0; i < std::abs(k); ++i) {
      v = step.apply(v);
      if (radius_of(v) > f.cutoff) fail(ErrorCode::CutoffTooSmall, "pulled-back mode leaves the cutoff");
    }
    out.coeffs[v] += c;
  }
  return out;
}

GrowthReport growth_exponent(const CatAuto& A, const TorusPoly& f, int kmax) {
  if (kmax < 2) fail(ErrorCode::ConfigInvalid, "kmax must be at least 2");
  GrowthReport rep;
  rep.spectral_radius = A.spectral_radius();
  TorusPoly cur = f;
  for (int k = 0; k <= kmax; ++k) {
    rep.norms.push_back(torus_symbol_norm(cur));
    if (k < kmax) cur = cat_pullback(cur, A, 1);
  }
  const double prev = rep.norms[kmax - 1];
  rep.ratio = prev > 0.0 ? rep.norms[kmax] / prev : 0.0;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int k = std::max(1, kmax / 2); k <= kmax; ++k) {
    if (!(rep.norms[k] > 0.0)) continue;
    const double x = std::log(static_cast<double>(k)), y = std::log(rep.norms[k]);
    sx += x, sy += y, sxx += x * x, sxy += x * y, ++cnt;
  }
  const double den = cnt * sxx - sx * sx;
  rep.power = (cnt >= 2 && den > 0.0) ? (cnt * sxy - sx * sy) / den : 0.0;
  return rep;
}

}  // namespace smlab::torus
