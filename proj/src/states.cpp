#include "qcorr/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qcorr {

namespace {
constexpr double kPi = std::numbers::pi;
}

StateFamily StateFamily::werner(int n_qubits, double mu) {
  StateFamily f;
  f.kind = StateKind::WernerGHZ;
  f.n_qubits = n_qubits;
  f.mu = mu;
  return f;
}

StateFamily StateFamily::rindler(double r) {
  StateFamily f;
  f.kind = StateKind::RindlerGHZ;
  f.n_qubits = 3;
  f.r = r;
  return f;
}

DensityMatrix StateFamily::state() const {
  switch (kind) {
    case StateKind::WernerGHZ:
      return werner_ghz(n_qubits, mu);
    case StateKind::RindlerGHZ:
      return rindler_tripartite(r);
  }
  throw std::logic_error("StateFamily: unknown kind");
}

std::string StateFamily::label() const {
  return kind == StateKind::WernerGHZ ? "werner-ghz" : "rindler";
}

DensityMatrix werner_ghz(int n_qubits, double mu) {
  if (n_qubits < 2 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("werner_ghz: qubit count " +
                                std::to_string(n_qubits) + " outside [2, " +
                                std::to_string(kMaxQubits) + "]");
  }
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw std::invalid_argument("werner_ghz: mu = " + std::to_string(mu) +
                                " outside [0, 1]");
  }
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  ComplexMatrix m = ComplexMatrix::Identity(d, d) * ((1.0 - mu) / static_cast<double>(d));
  m(0, 0) += 0.5 * mu;
  m(d - 1, d - 1) += 0.5 * mu;
  m(0, d - 1) += 0.5 * mu;
  m(d - 1, 0) += 0.5 * mu;
  return DensityMatrix(n_qubits, std::move(m));
}

DensityMatrix rindler_tripartite(double r) {
  if (!(r >= 0.0 && r <= kPi / 4.0 + 1e-15)) {
    throw std::invalid_argument("rindler_tripartite: r = " + std::to_string(r) +
                                " outside [0, pi/4]");
  }
  const double c = std::cos(r);
  const double c2 = c * c;           // in [1/2, 1]
  const double s2 = 1.0 - c2;        // exact for c2 >= 1/2

  ComplexMatrix m = ComplexMatrix::Zero(8, 8);
  m(0, 0) = 0.5 * c2 * c2;  // |000>
  m(1, 1) = 0.5 * c2 * s2;  // |001>
  m(2, 2) = 0.5 * s2 * c2;  // |010>
  // |011>: residual weight so the diagonal sums to exactly 1 with m(7,7)
  m(3, 3) = 0.5 - (m(0, 0).real() + m(1, 1).real() + m(2, 2).real());
  m(7, 7) = 0.5;            // |111>
  m(0, 7) = 0.5 * c2;       // |000><111| coherence, cos(r_b) cos(r_c) / 2
  m(7, 0) = 0.5 * c2;
  return DensityMatrix(3, std::move(m));
}

double acceleration_to_r(double a, double omega) {
  if (!(a > 0.0)) {
    throw std::invalid_argument("acceleration_to_r: acceleration must be positive");
  }
  if (!(omega > 0.0)) {
    throw std::invalid_argument("acceleration_to_r: mode frequency must be positive");
  }
  const double cos_r = 1.0 / std::sqrt(std::exp(-2.0 * kPi * omega / a) + 1.0);
  return std::acos(cos_r);
}

}  // namespace qcorr
