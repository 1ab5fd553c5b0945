#pragma once

// Shared helpers for the unit tests: seeded random matrices and small
// reference computations that avoid the library under test.

#include <algorithm>
#include <cmath>
#include <vector>

#include "smlab/operator_core.hpp"
#include "smlab/rng.hpp"

namespace smlab::testing {

inline CMatrix random_matrix(Rng& rng, int rows, int cols) {
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
  return m;
}

inline CMatrix random_hermitian(Rng& rng, int n) {
  const CMatrix m = random_matrix(rng, n, n);
  return 0.5 * (m + m.adjoint());
}

inline CMatrix random_unitary(Rng& rng, int n) {
  Eigen::HouseholderQR<CMatrix> qr(random_matrix(rng, n, n));
  return qr.householderQ() * CMatrix::Identity(n, n);
}

/// Largest singular value by power iteration on A*A.
inline double power_iteration_norm(const CMatrix& a, int iters = 2000) {
  const CMatrix g = a.adjoint() * a;
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(g.cols());
  double lambda = 0.0;
  for (int k = 0; k < iters; ++k) {
    Eigen::VectorXcd w = g * v;
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    lambda = nw / v.norm();
    v = w / nw;
  }
  return std::sqrt(lambda);
}

/// Max entry of |A - B|.
inline double max_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace smlab::testing
