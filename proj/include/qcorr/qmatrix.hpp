#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

// Dense complex linear-algebra substrate for multi-qubit density operators.
// Qubit index 0 is the leftmost tensor factor, i.e. the most significant bit
// of the computational-basis index. Sized for at most kMaxQubits qubits.

namespace qcorr {

using ComplexMatrix = Eigen::MatrixXcd;
using complexd = std::complex<double>;

inline constexpr int kMaxQubits = 8;
inline constexpr Eigen::Index kMaxDim = Eigen::Index{1} << kMaxQubits;

// Validation tolerances, sized to survive ~4096-operator channel applications
// in double precision.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;

/// Kronecker product. Fails if the result would exceed kMaxDim.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Real eigenvalues of a Hermitian matrix, sorted descending.
/// Throws if the input deviates from Hermitian by more than 1e-10.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Squared Hilbert-Schmidt norm, Tr(m^dag m) = sum |m_ij|^2.
double hs_norm_sq(const ComplexMatrix& m);

/// Validated n-qubit density operator: Hermitian, unit trace, positive
/// semidefinite (within the tolerances above). Immutable after construction.
class DensityMatrix {
 public:
  DensityMatrix(int n_qubits, ComplexMatrix m);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  int n_qubits_;
  ComplexMatrix m_;
};

/// Reduced density matrix on the given qubits, in the order listed.
/// `keep` must be nonempty, in range, and free of duplicates.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

namespace detail {

// sum_k (E_k on `qubit`) x (E_k on `qubit`)^dag for 2x2 operators E_k acting
// on one qubit of an n-qubit operator x. The workhorse behind channel
// application and basis pinching; O(|ops| * dim^2).
ComplexMatrix apply_local_kraus(const ComplexMatrix& x,
                                std::span<const Eigen::Matrix2cd> ops,
                                int qubit, int n_qubits);

// In-place x <- U x U^dag with a 2x2 unitary on one qubit.
void conjugate_local_unitary(ComplexMatrix& x, const Eigen::Matrix2cd& u,
                             int qubit, int n_qubits);

}  // namespace detail

}  // namespace qcorr
