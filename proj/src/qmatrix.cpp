#include "qcorr/qmatrix.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qcorr {

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() < 1 || b.rows() < 1) {
    throw std::invalid_argument("tensor: operands must be at least 1x1");
  }
  if (a.rows() * b.rows() > kMaxDim || a.cols() * b.cols() > kMaxDim) {
    throw std::runtime_error("tensor: result dimension " +
                             std::to_string(a.rows() * b.rows()) +
                             " exceeds the configured maximum " +
                             std::to_string(kMaxDim));
  }
  return Eigen::kroneckerProduct(a, b);
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not square");
  }
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-10) {
    throw std::runtime_error(
        "hermitian_eigenvalues: input is not Hermitian (max deviation " +
        std::to_string(dev) + ")");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigenvalues: eigensolver failed");
  }
  std::vector<double> values(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + m.rows());
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

double hs_norm_sq(const ComplexMatrix& m) { return m.squaredNorm(); }

DensityMatrix::DensityMatrix(int n_qubits, ComplexMatrix m)
    : n_qubits_(n_qubits), m_(std::move(m)) {
  if (n_qubits_ < 1 || n_qubits_ > kMaxQubits) {
    throw std::invalid_argument("DensityMatrix: qubit count " +
                                std::to_string(n_qubits_) +
                                " outside [1, " + std::to_string(kMaxQubits) + "]");
  }
  const Eigen::Index d = Eigen::Index{1} << n_qubits_;
  if (m_.rows() != d || m_.cols() != d) {
    throw std::invalid_argument("DensityMatrix: matrix is " +
                                std::to_string(m_.rows()) + "x" +
                                std::to_string(m_.cols()) + ", expected " +
                                std::to_string(d) + "x" + std::to_string(d));
  }
  const double herm_dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > kHermitianTol) {
    throw std::runtime_error("DensityMatrix: not Hermitian, max |rho_ij - conj(rho_ji)| = " +
                             std::to_string(herm_dev));
  }
  const double trace_dev = std::abs(m_.trace() - complexd{1.0, 0.0});
  if (trace_dev > kTraceTol) {
    throw std::runtime_error("DensityMatrix: trace deviates from 1 by " +
                             std::to_string(trace_dev));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m_, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success || solver.eigenvalues().minCoeff() < -kPsdTol) {
    throw std::runtime_error("DensityMatrix: not positive semidefinite (min eigenvalue " +
                             std::to_string(solver.eigenvalues().minCoeff()) + ")");
  }
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const int n = rho.n_qubits();
  if (keep.empty()) {
    throw std::invalid_argument("partial_trace: keep set is empty");
  }
  std::vector<bool> seen(n, false);
  for (int q : keep) {
    if (q < 0 || q >= n) {
      throw std::invalid_argument("partial_trace: qubit index " +
                                  std::to_string(q) + " out of range for " +
                                  std::to_string(n) + " qubits");
    }
    if (seen[q]) {
      throw std::invalid_argument("partial_trace: duplicate qubit index " +
                                  std::to_string(q));
    }
    seen[q] = true;
  }

  const int n_keep = static_cast<int>(keep.size());
  std::vector<int> traced;
  for (int q = 0; q < n; ++q) {
    if (!seen[q]) traced.push_back(q);
  }

  // Bit position of a qubit inside the full index (qubit 0 = MSB).
  auto bit = [n](int q) { return Eigen::Index{1} << (n - 1 - q); };

  const Eigen::Index dk = Eigen::Index{1} << n_keep;
  const Eigen::Index dt = Eigen::Index{1} << traced.size();
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  const ComplexMatrix& in = rho.matrix();

  for (Eigen::Index r = 0; r < dk; ++r) {
    for (Eigen::Index c = 0; c < dk; ++c) {
      Eigen::Index i = 0, j = 0;
      for (int k = 0; k < n_keep; ++k) {
        if (r & (Eigen::Index{1} << (n_keep - 1 - k))) i |= bit(keep[k]);
        if (c & (Eigen::Index{1} << (n_keep - 1 - k))) j |= bit(keep[k]);
      }
      complexd acc{0.0, 0.0};
      for (Eigen::Index s = 0; s < dt; ++s) {
        Eigen::Index off = 0;
        for (std::size_t k = 0; k < traced.size(); ++k) {
          if (s & (Eigen::Index{1} << (traced.size() - 1 - k))) off |= bit(traced[k]);
        }
        acc += in(i | off, j | off);
      }
      out(r, c) = acc;
    }
  }
  return DensityMatrix(n_keep, std::move(out));
}

namespace detail {

ComplexMatrix apply_local_kraus(const ComplexMatrix& x,
                                std::span<const Eigen::Matrix2cd> ops,
                                int qubit, int n_qubits) {
  const Eigen::Index d = x.rows();
  const Eigen::Index mask = Eigen::Index{1} << (n_qubits - 1 - qubit);
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  ComplexMatrix t(d, d);
  for (const Eigen::Matrix2cd& e : ops) {
    // t = (E on qubit) x, mixing row pairs that differ in the qubit's bit
    for (Eigen::Index i = 0; i < d; ++i) {
      if (i & mask) continue;
      t.row(i) = e(0, 0) * x.row(i) + e(0, 1) * x.row(i | mask);
      t.row(i | mask) = e(1, 0) * x.row(i) + e(1, 1) * x.row(i | mask);
    }
    // out += t (E on qubit)^dag, mixing column pairs
    for (Eigen::Index j = 0; j < d; ++j) {
      if (j & mask) continue;
      out.col(j) += std::conj(e(0, 0)) * t.col(j) + std::conj(e(0, 1)) * t.col(j | mask);
      out.col(j | mask) += std::conj(e(1, 0)) * t.col(j) + std::conj(e(1, 1)) * t.col(j | mask);
    }
  }
  return out;
}

void conjugate_local_unitary(ComplexMatrix& x, const Eigen::Matrix2cd& u,
                             int qubit, int n_qubits) {
  // Hot loop of the measurement-angle search; keeps every traversal
  // unit-stride on the column-major storage and allocation-free.
  const Eigen::Index d = x.rows();
  const Eigen::Index mask = Eigen::Index{1} << (n_qubits - 1 - qubit);
  const complexd u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  const complexd c00 = std::conj(u00), c01 = std::conj(u01);
  const complexd c10 = std::conj(u10), c11 = std::conj(u11);

  // x <- (U on qubit) x: 2x2 row rotations, walked down each column
  for (Eigen::Index j = 0; j < d; ++j) {
    complexd* col = x.col(j).data();
    for (Eigen::Index i = 0; i < d; ++i) {
      if (i & mask) continue;
      const complexd a = col[i];
      const complexd b = col[i | mask];
      col[i] = u00 * a + u01 * b;
      col[i | mask] = u10 * a + u11 * b;
    }
  }
  // x <- x (U on qubit)^dag: 2x2 column rotations over column pairs
  for (Eigen::Index j = 0; j < d; ++j) {
    if (j & mask) continue;
    complexd* lo = x.col(j).data();
    complexd* hi = x.col(j | mask).data();
    for (Eigen::Index i = 0; i < d; ++i) {
      const complexd a = lo[i];
      const complexd b = hi[i];
      lo[i] = a * c00 + b * c01;
      hi[i] = a * c10 + b * c11;
    }
  }
}

}  // namespace detail

}  // namespace qcorr
