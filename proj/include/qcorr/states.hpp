#pragma once

#include "qcorr/qmatrix.hpp"

#include <string>

namespace qcorr {

enum class StateKind { WernerGHZ, RindlerGHZ };

/// Parameters selecting one of the supported initial-state families.
/// Werner-GHZ uses (n_qubits, mu); the Rindler tripartite state uses r and
/// is fixed at 3 qubits.
struct StateFamily {
  StateKind kind = StateKind::WernerGHZ;
  int n_qubits = 3;
  double mu = 1.0;   // Werner-GHZ mixing weight, in [0, 1]
  double r = 0.0;    // acceleration angle, in [0, pi/4]

  static StateFamily werner(int n_qubits, double mu);
  static StateFamily rindler(double r);

  DensityMatrix state() const;
  std::string label() const;
};

/// rho = (1 - mu) I/2^n + mu |ghz><ghz| with |ghz> = (|0..0> + |1..1>)/sqrt(2).
DensityMatrix werner_ghz(int n_qubits, double mu);

/// Three-qubit state shared by an inertial observer and two observers with
/// equal proper acceleration, after tracing the causally disconnected Rindler
/// wedge. r = 0 reduces to the pure GHZ state; r = pi/4 is the infinite
/// acceleration limit.
DensityMatrix rindler_tripartite(double r);

/// Acceleration angle r = arccos((e^{-2 pi omega / a} + 1)^{-1/2}) in natural
/// units (c = 1). Requires a > 0 and omega > 0; the range is [0, pi/4).
double acceleration_to_r(double a, double omega);

}  // namespace qcorr
