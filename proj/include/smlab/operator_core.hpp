#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "smlab/error.hpp"

namespace smlab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Builds a rows x cols matrix from row-major entries. Rejects a wrong entry
/// count (ShapeMismatch) and NaN/Inf entries (NonFinite).
CMatrix make_cmatrix(int rows, int cols, std::span<const Complex> row_major);

/// Throws NonFinite if any entry of `a` is NaN or infinite.
void require_finite(const CMatrix& a, const char* what);

struct HermitianEigen {
  RVector values;   // ascending
  CMatrix vectors;  // orthonormal columns, vectors.col(i) <-> values(i)
};

HermitianEigen hermitian_eigen(const CMatrix& a);

/// Eigenvalues only (ascending); same preconditions as hermitian_eigen.
RVector hermitian_eigenvalues(const CMatrix& a);

/// Largest singular value. Zero for an empty or zero matrix.
double operator_norm(const CMatrix& a);

/// AB - BA.
CMatrix commutator(const CMatrix& a, const CMatrix& b);

/// Kronecker product with the row index of `a` outermost.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Splits an operator on H (x) C^s into components along a trace-orthogonal
/// basis {e_i} of s x s matrices, so that a = sum_i component_i (x) e_i.
/// The spin factor is the innermost (fastest varying) index.
std::vector<CMatrix> partial_trace_spin(const CMatrix& a, const std::vector<CMatrix>& basis);

/// Max |A_ij - conj(A_ji)|.
double hermiticity_defect(const CMatrix& a);

/// Max absolute entry.
double max_abs(const CMatrix& a);

namespace spin {

CMatrix identity2();
CMatrix sigma1();
CMatrix sigma2();
CMatrix sigma3();

/// gamma(1..5) on C^4: g1 = s1(x)s3, g2 = s2(x)s3, g3 = s3(x)s3, g4 = 1(x)s1, g5 = 1(x)s2.
CMatrix gamma(int index);

/// {1, s1, s2, s3}.
std::vector<CMatrix> pauli_basis();

/// The 16 products {1, g_i, i g_i g_j (i<j), ...} forming a trace-orthogonal
/// basis of M_4(C); entry k+1 for k = 0..4 is gamma(k+1).
std::vector<CMatrix> clifford_basis();

}  // namespace spin

/// A dense operator tagged with the tensor layout it acts on. The factor list
/// is outermost first; `offset` is the label of index 0 of a factor (e.g. -N
/// for a window -N..N).
struct TensorFactor {
  std::string name;
  int dim = 1;
  int offset = 0;
};

struct TruncatedOperator {
  CMatrix matrix;
  std::vector<TensorFactor> layout;

  int dim() const { return static_cast<int>(matrix.rows()); }
  /// Flat index from per-factor labels (label - offset per factor).
  int index(std::span<const int> labels) const;
};

}  // namespace smlab
