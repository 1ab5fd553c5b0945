#include "smlab/operator_core.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace smlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::BadLayout: return "BadLayout";
    case ErrorCode::OutOfWindow: return "OutOfWindow";
    case ErrorCode::ZeroLambda: return "ZeroLambda";
    case ErrorCode::WeightViolation: return "WeightViolation";
    case ErrorCode::RangeTooLarge: return "RangeTooLarge";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::InvalidMetric: return "InvalidMetric";
    case ErrorCode::EmptySupport: return "EmptySupport";
    case ErrorCode::InvalidMeasure: return "InvalidMeasure";
    case ErrorCode::NotTightInWindow: return "NotTightInWindow";
    case ErrorCode::NotSPD: return "NotSPD";
    case ErrorCode::DegenerateTrace: return "DegenerateTrace";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorCode::DepthTooLarge: return "DepthTooLarge";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::ModeEscape: return "ModeEscape";
    case ErrorCode::ZeroMode: return "ZeroMode";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::SingletonCode: return "SingletonCode";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidCode: return "InvalidCode";
    case ErrorCode::UnknownExperiment: return "UnknownExperiment";
  }
  return "Unknown";
}

CMatrix make_cmatrix(int rows, int cols, std::span<const Complex> row_major) {
  if (rows <= 0 || cols <= 0 || row_major.size() != static_cast<size_t>(rows) * cols)
    fail(ErrorCode::ShapeMismatch, "entry count does not match rows x cols");
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = row_major[static_cast<size_t>(i) * cols + j];
  require_finite(m, "make_cmatrix");
  return m;
}

void require_finite(const CMatrix& a, const char* what) {
  if (!a.allFinite()) fail(ErrorCode::NonFinite, std::string(what) + ": non-finite entry");
}

namespace {

void check_hermitian(const CMatrix& a) {
  if (a.rows() != a.cols()) fail(ErrorCode::NonSquare, "hermitian_eigen needs a square matrix");
  require_finite(a, "hermitian_eigen");
  const double scale = std::max(1.0, max_abs(a));
  if (hermiticity_defect(a) > 1e-12 * scale)
    fail(ErrorCode::NotHermitian, "matrix is not Hermitian to 1e-12");
}

}  // namespace

HermitianEigen hermitian_eigen(const CMatrix& a) {
  check_hermitian(a);
  if (a.rows() == 0) return {RVector(0), CMatrix(0, 0)};
  // Symmetrize so the solver only ever sees an exactly Hermitian input.
  const CMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::ComputeEigenvectors);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RVector hermitian_eigenvalues(const CMatrix& a) {
  check_hermitian(a);
  if (a.rows() == 0) return RVector(0);
  const CMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double operator_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  const double scale = max_abs(a);
  if (scale == 0.0) return 0.0;
  // Work on the smaller Gram matrix; scale first to keep A*A well inside range.
  const CMatrix s = a / scale;
  const CMatrix gram = s.rows() < s.cols() ? CMatrix(s * s.adjoint()) : CMatrix(s.adjoint() * s);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (gram + gram.adjoint()), Eigen::EigenvaluesOnly);
  const double top = solver.eigenvalues()(solver.eigenvalues().size() - 1);
  return scale * std::sqrt(std::max(top, 0.0));
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    fail(ErrorCode::ShapeMismatch, "commutator needs conformable square matrices");
  return a * b - b * a;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

std::vector<CMatrix> partial_trace_spin(const CMatrix& a, const std::vector<CMatrix>& basis) {
  if (basis.empty()) fail(ErrorCode::BadLayout, "empty spin basis");
  const Eigen::Index s = basis.front().rows();
  for (const auto& e : basis)
    if (e.rows() != s || e.cols() != s) fail(ErrorCode::BadLayout, "spin basis matrices differ in shape");
  if (a.rows() != a.cols() || s == 0 || a.rows() % s != 0)
    fail(ErrorCode::BadLayout, "operator dimension is not a multiple of the spin dimension");

  std::vector<Complex> norms(basis.size());
  for (size_t i = 0; i < basis.size(); ++i) {
    for (size_t j = 0; j < basis.size(); ++j) {
      const Complex t = (basis[i] * basis[j]).trace();
      if (i == j) {
        if (std::abs(t) < 1e-12) fail(ErrorCode::BadLayout, "basis element with zero trace norm");
        norms[i] = t;
      } else if (std::abs(t) > 1e-12) {
        fail(ErrorCode::BadLayout, "spin basis is not trace-orthogonal");
      }
    }
  }

  const Eigen::Index outer = a.rows() / s;
  std::vector<CMatrix> out;
  out.reserve(basis.size());
  for (size_t k = 0; k < basis.size(); ++k) {
    CMatrix comp(outer, outer);
    for (Eigen::Index i = 0; i < outer; ++i)
      for (Eigen::Index j = 0; j < outer; ++j)
        comp(i, j) = (a.block(i * s, j * s, s, s) * basis[k]).trace() / norms[k];
    out.push_back(std::move(comp));
  }
  return out;
}

double hermiticity_defect(const CMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(a - a.adjoint());
}

double max_abs(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

namespace spin {

CMatrix identity2() { return CMatrix::Identity(2, 2); }

CMatrix sigma1() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

CMatrix sigma2() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = -kI;
  m(1, 0) = kI;
  return m;
}

CMatrix sigma3() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

CMatrix gamma(int index) {
  switch (index) {
    case 1: return kron(sigma1(), sigma3());
    case 2: return kron(sigma2(), sigma3());
    case 3: return kron(sigma3(), sigma3());
    case 4: return kron(identity2(), sigma1());
    case 5: return kron(identity2(), sigma2());
    default: fail(ErrorCode::BadLayout, "gamma index must be in 1..5");
  }
}

std::vector<CMatrix> pauli_basis() { return {identity2(), sigma1(), sigma2(), sigma3()}; }

std::vector<CMatrix> clifford_basis() {
  std::vector<CMatrix> out;
  out.push_back(CMatrix::Identity(4, 4));
  for (int i = 1; i <= 5; ++i) out.push_back(gamma(i));
  for (int i = 1; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j) out.push_back(kI * gamma(i) * gamma(j));
  return out;
}

}  // namespace spin

int TruncatedOperator::index(std::span<const int> labels) const {
  if (labels.size() != layout.size()) fail(ErrorCode::BadLayout, "label count does not match layout");
  int flat = 0;
  for (size_t k = 0; k < layout.size(); ++k) {
    const int local = labels[k] - layout[k].offset;
    if (local < 0 || local >= layout[k].dim)
      fail(ErrorCode::OutOfWindow, "label outside factor '" + layout[k].name + "'");
    flat = flat * layout[k].dim + local;
  }
  return flat;
}

}  // namespace smlab
