#include "smlab/rm_torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "smlab/error.hpp"

namespace smlab::rm {

using spin::identity2;
using spin::sigma1;
using spin::sigma2;
using spin::sigma3;

namespace {

using Triplet = Eigen::Triplet<Complex>;

bool is_squarefree(int D) {
  for (int p = 2; p * p <= D; ++p)
    if (D % (p * p) == 0) return false;
  return true;
}

long long exact_sqrt(long long v) {
  if (v < 0) return -1;
  long long r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(v))));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r * r == v ? r : -1;
}

CMatrix base_symbol(Mode v, const RMField& f) {
  const auto [x1, x2] = f.embed(v);
  // delta_theta' sigma_1 + delta_theta sigma_2
  return x2 * sigma1() + x1 * sigma2();
}

SparseC make_sparse(int rows, int cols, const std::vector<Triplet>& t) {
  SparseC m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

double sparse_max_abs(const SparseC& m) {
  double best = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseC::InnerIterator it(m, k); it; ++it) best = std::max(best, std::abs(it.value()));
  return best;
}

}  // namespace

Mode RMField::act(Mode v, int k) const {
  for (int i = 0; i < std::abs(k); ++i) {
    if (k > 0)
      v = {v.first * a + v.second * c, v.first * b + v.second * d};
    else  // phi^-1 = [[d, -b], [-c, a]]
      v = {v.first * d - v.second * c, -v.first * b + v.second * a};
  }
  return v;
}

std::pair<double, double> RMField::embed(Mode v) const {
  const double n = static_cast<double>(v.first), m = static_cast<double>(v.second);
  return {n + m * theta, n + m * theta_conj};
}

RMField rm_setup(int D) {
  if (D < 2) fail(ErrorCode::NotSquarefree, "D must be a squarefree integer > 1");
  if (!is_squarefree(D)) fail(ErrorCode::NotSquarefree, std::to_string(D) + " is not squarefree");
  RMField f;
  f.D = D;
  const double r = std::sqrt(static_cast<double>(D));
  const bool half = D % 4 == 1;
  f.theta = half ? (1.0 + r) / 2.0 : r;
  f.theta_conj = half ? (1.0 - r) / 2.0 : -r;
  for (long long b = 1; b <= 1000000; ++b) {
    long long a = -1;
    if (half) {
      // a^2 + ab - b^2 (D-1)/4 = 1  <=>  (2a + b)^2 = D b^2 + 4
      const long long s = exact_sqrt(D * b * b + 4);
      if (s > b && (s - b) % 2 == 0) a = (s - b) / 2;
    } else {
      a = exact_sqrt(1 + D * b * b);
    }
    if (a <= 0) continue;
    f.a = a;
    f.b = b;
    // eps theta = c + d theta
    f.c = half ? b * (D - 1) / 4 : b * D;
    f.d = half ? a + b : a;
    break;
  }
  if (f.b == 0) fail(ErrorCode::TooLarge, "no unit found within the search bound");
  f.eps = static_cast<double>(f.a) + static_cast<double>(f.b) * f.theta;
  f.eps_conj = static_cast<double>(f.a) + static_cast<double>(f.b) * f.theta_conj;
  return f;
}

TwistedProduct twisted_mode_product(Mode eta, Mode lam, double theta) {
  TwistedProduct p;
  p.wedge = eta.first * lam.second - eta.second * lam.first;
  p.phase = std::polar(1.0, -std::numbers::pi * theta * static_cast<double>(p.wedge));
  p.sum = {eta.first + lam.first, eta.second + lam.second};
  return p;
}

ModeBox::ModeBox(long long M) : M_(M), side_(2 * M + 1) {
  if (M < 0) fail(ErrorCode::ConfigInvalid, "mode box radius must be >= 0");
}

bool ModeBox::contains(Mode v) const { return std::llabs(v.first) <= M_ && std::llabs(v.second) <= M_; }

int ModeBox::index(Mode v) const {
  if (!contains(v)) fail(ErrorCode::ModeEscape, "mode outside the box");
  return static_cast<int>((v.first + M_) * side_ + (v.second + M_));
}

Mode ModeBox::mode(int i) const { return {i / side_ - M_, i % side_ - M_}; }

SparseC twisted_translation(Mode eta, const ModeBox& box, double theta) {
  std::vector<Triplet> t;
  for (int i = 0; i < box.size(); ++i) {
    const Mode lam = box.mode(i);
    const auto p = twisted_mode_product(eta, lam, theta);
    if (box.contains(p.sum)) t.emplace_back(box.index(p.sum), i, p.phase);
  }
  return make_sparse(box.size(), box.size(), t);
}

TruncatedOperator rm_dirac(const ModeBox& box, const RMField& f) {
  TruncatedOperator op;
  op.layout = {{"mode", box.size(), 0}, {"spin", 2, 0}};
  op.matrix = CMatrix::Zero(2 * box.size(), 2 * box.size());
  for (int i = 0; i < box.size(); ++i) op.matrix.block(2 * i, 2 * i, 2, 2) = base_symbol(box.mode(i), f);
  return op;
}

double rm_commutator_norm(Mode eta, const ModeBox& box, const RMField& f) {
  if (!box.contains(eta)) fail(ErrorCode::ModeEscape, "translation mode outside the box");
  const CMatrix d = rm_dirac(box, f).matrix;
  const CMatrix r = kron(CMatrix(twisted_translation(eta, box, f.theta)), identity2());
  return operator_norm(commutator(d, r));
}

std::vector<double> rm_orbit_norms(Mode lam, const RMField& f, int kmax) {
  std::vector<double> out;
  for (int k = 0; k <= kmax; ++k) {
    const auto [x1, x2] = f.embed(f.act(lam, k));
    out.push_back(std::hypot(x1, x2));
  }
  return out;
}

RMCrossed::RMCrossed(const RMField& f, int N, long long M) : field_(f), N_(N), box_(M) {
  if (N < 1) fail(ErrorCode::ConfigInvalid, "window N must be >= 1");
  base_dirac_ = rm_dirac(box_, f);
  const double L = std::log(f.eps);
  std::vector<Triplet> td, tu;
  for (int n = -N; n <= N; ++n)
    for (int i = 0; i < box_.size(); ++i) {
      const Mode v = box_.mode(i);
      const CMatrix blk = static_cast<double>(n) * L * sigma3() + base_symbol(v, f);
      for (int s = 0; s < 2; ++s)
        for (int s2 = 0; s2 < 2; ++s2)
          if (blk(s, s2) != Complex(0.0)) td.emplace_back(index(n, v, s), index(n, v, s2), blk(s, s2));
      if (n - 1 >= -N)
        for (int s = 0; s < 2; ++s) tu.emplace_back(index(n - 1, v, s), index(n, v, s), 1.0);
    }
  dhat_ = make_sparse(dim(), dim(), td);
  upsilon_ = make_sparse(dim(), dim(), tu);
}

int RMCrossed::index(int n, Mode v, int s) const {
  if (n < -N_ || n > N_) fail(ErrorCode::OutOfWindow, "site outside the window");
  return ((n + N_) * box_.size() + box_.index(v)) * 2 + s;
}

namespace {

template <class Emit>
void for_each_block_entry(const RMSequence& b, const RMField& f, const ModeBox& box, int N, Emit&& emit) {
  if (static_cast<int>(b.size()) != 2 * N + 1) fail(ErrorCode::ShapeMismatch, "sequence length must be 2N + 1");
  for (int n = -N; n <= N; ++n)
    for (const auto& [lam, c] : b[static_cast<size_t>(n + N)]) {
      const Mode mu = f.act(lam, -n);
      if (!box.contains(mu)) fail(ErrorCode::ModeEscape, "alpha^-n moves a mode outside the box");
      for (int i = 0; i < box.size(); ++i) {
        const Mode v = box.mode(i);
        const auto p = twisted_mode_product(mu, v, f.theta);
        if (box.contains(p.sum)) emit(n, v, p.sum, mu, c * p.phase);
      }
    }
}

}  // namespace

SparseC RMCrossed::represent(const RMSequence& b) const {
  std::vector<Triplet> t;
  for_each_block_entry(b, field_, box_, N_, [&](int n, Mode from, Mode to, Mode, Complex w) {
    for (int s = 0; s < 2; ++s) t.emplace_back(index(n, to, s), index(n, from, s), w);
  });
  return make_sparse(dim(), dim(), t);
}

SparseC RMCrossed::blockwise_base_commutator(const RMSequence& b) const {
  std::vector<Triplet> t;
  for_each_block_entry(b, field_, box_, N_, [&](int n, Mode from, Mode to, Mode mu, Complex w) {
    const CMatrix blk = w * base_symbol(mu, field_);
    for (int s = 0; s < 2; ++s)
      for (int s2 = 0; s2 < 2; ++s2)
        if (blk(s, s2) != Complex(0.0)) t.emplace_back(index(n, to, s), index(n, from, s2), blk(s, s2));
  });
  return make_sparse(dim(), dim(), t);
}

RMSequence RMCrossed::alpha_star(const RMSequence& b) const {
  if (static_cast<int>(b.size()) != 2 * N_ + 1) fail(ErrorCode::ShapeMismatch, "sequence length must be 2N + 1");
  RMSequence out(b.size());
  for (size_t i = 1; i < b.size(); ++i)
    for (const auto& [lam, c] : b[i - 1]) out[i][field_.act(lam, 1)] += c;
  return out;
}

RMCrossedReport rm_crossed_check(const RMCrossed& rc, const RMSequence& b) {
  RMCrossedReport rep;
  const SparseC& D = rc.dhat();
  const SparseC& U = rc.upsilon();
  const SparseC Ut = U.adjoint();
  const SparseC s3 = [&] {
    std::vector<Triplet> t;
    for (int i = 0; i < rc.dim(); ++i) t.emplace_back(i, i, i % 2 == 0 ? 1.0 : -1.0);
    return make_sparse(rc.dim(), rc.dim(), t);
  }();
  const double logeps = std::log(rc.field().eps);
  SparseC defect = SparseC(D * U - U * D) + logeps * SparseC(s3 * U);
  rep.upsilon_defect = sparse_max_abs(defect);

  const SparseC B = rc.represent(b);
  const SparseC A = rc.represent(rc.alpha_star(b));
  rep.covariance_defect = sparse_max_abs(SparseC(SparseC(Ut * B) * U) - A);
  rep.inverse_covariance_defect = sparse_max_abs(SparseC(SparseC(U * B) * Ut) - A);
  rep.blockwise_defect = sparse_max_abs(SparseC(D * B - B * D) - rc.blockwise_base_commutator(b));
  return rep;
}

OrbitDecomposition orbit_decompose(Mode lam, const RMField& f) {
  if (lam.first == 0 && lam.second == 0) fail(ErrorCode::ZeroMode, "the zero mode has no orbit decomposition");
  const double le = std::log(f.eps);
  auto t_of = [&](Mode v) {
    const auto [x1, x2] = f.embed(v);
    return std::log(std::abs(x1) / std::abs(x2)) / (2.0 * le);
  };
  int k = static_cast<int>(std::floor(t_of(lam)));
  OrbitDecomposition out;
  for (int guard = 0; guard < 4; ++guard) {
    out.mu = f.act(lam, -k);
    out.t = t_of(out.mu);
    if (out.t < 0.0)
      --k;
    else if (out.t >= 1.0)
      ++k;
    else
      break;
  }
  out.k = k;
  const auto [x1, x2] = f.embed(out.mu);
  out.norm = x1 * x2;
  return out;
}

CMatrix rm_dmu_block(Mode mu, int k, const RMField& f) {
  const auto [x1, x2] = f.embed(mu);
  const double N = x1 * x2;
  const double amp = (N > 0 ? 1.0 : (N < 0 ? -1.0 : 0.0)) * std::sqrt(std::abs(N));
  return amp * (std::pow(f.eps, k) * sigma1() + std::pow(f.eps, -k) * sigma2());
}

}  // namespace smlab::rm
