#include "qcorr/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qcorr {

namespace {

using Eigen::Matrix2cd;
constexpr complexd kI{0.0, 1.0};

Matrix2cd pauli_x() { return (Matrix2cd() << 0, 1, 1, 0).finished(); }
Matrix2cd pauli_y() { return (Matrix2cd() << 0, -kI, kI, 0).finished(); }
Matrix2cd pauli_z() { return (Matrix2cd() << 1, 0, 0, -1).finished(); }

std::vector<int> all_qubits(int n) {
  std::vector<int> q(n);
  std::iota(q.begin(), q.end(), 0);
  return q;
}

std::vector<int> resolve_targets(std::span<const int> targets, int n_qubits) {
  if (targets.empty()) return all_qubits(n_qubits);
  std::vector<bool> seen(n_qubits, false);
  for (int q : targets) {
    if (q < 0 || q >= n_qubits) {
      throw std::invalid_argument("channel target qubit " + std::to_string(q) +
                                  " out of range for " + std::to_string(n_qubits) +
                                  " qubits");
    }
    if (seen[q]) {
      throw std::invalid_argument("duplicate channel target qubit " + std::to_string(q));
    }
    seen[q] = true;
  }
  std::vector<int> sorted(targets.begin(), targets.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

}  // namespace

const std::vector<ChannelKind>& all_channel_kinds() {
  static const std::vector<ChannelKind> kinds = {
      ChannelKind::AmplitudeDamping, ChannelKind::PhaseDamping,
      ChannelKind::Depolarizing,     ChannelKind::BitFlip,
      ChannelKind::PhaseFlip,        ChannelKind::BitPhaseFlip,
  };
  return kinds;
}

std::string to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::AmplitudeDamping: return "amplitude-damping";
    case ChannelKind::PhaseDamping: return "phase-damping";
    case ChannelKind::Depolarizing: return "depolarizing";
    case ChannelKind::BitFlip: return "bit-flip";
    case ChannelKind::PhaseFlip: return "phase-flip";
    case ChannelKind::BitPhaseFlip: return "bit-phase-flip";
  }
  throw std::logic_error("to_string: unknown channel kind");
}

ChannelKind channel_kind_from_string(const std::string& name) {
  for (ChannelKind kind : all_channel_kinds()) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown channel '" + name +
                              "' (expected one of amplitude-damping, phase-damping, "
                              "depolarizing, bit-flip, phase-flip, bit-phase-flip)");
}

KrausChannel kraus_set(ChannelKind kind, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("kraus_set: p = " + std::to_string(p) +
                                " outside [0, 1]");
  }
  KrausChannel ch{kind, p, {}};
  switch (kind) {
    case ChannelKind::AmplitudeDamping: {
      Matrix2cd a0 = Matrix2cd::Zero(), a1 = Matrix2cd::Zero();
      a0(0, 0) = 1.0;
      a0(1, 1) = std::sqrt(1.0 - p);
      a1(0, 1) = std::sqrt(p);
      ch.operators = {a0, a1};
      break;
    }
    case ChannelKind::PhaseDamping: {
      Matrix2cd e0 = Matrix2cd::Zero(), e1 = Matrix2cd::Zero();
      e0(0, 0) = 1.0;
      e0(1, 1) = std::sqrt(1.0 - p);
      e1(1, 1) = std::sqrt(p);
      ch.operators = {e0, e1};
      break;
    }
    case ChannelKind::Depolarizing: {
      const double w = std::sqrt(p / 4.0);
      ch.operators = {std::sqrt(1.0 - 3.0 * p / 4.0) * Matrix2cd::Identity(),
                      w * pauli_x(), w * pauli_y(), w * pauli_z()};
      break;
    }
    case ChannelKind::BitFlip:
      ch.operators = {std::sqrt(1.0 - p) * Matrix2cd::Identity(),
                      std::sqrt(p) * pauli_x()};
      break;
    case ChannelKind::PhaseFlip:
      ch.operators = {std::sqrt(1.0 - p) * Matrix2cd::Identity(),
                      std::sqrt(p) * pauli_z()};
      break;
    case ChannelKind::BitPhaseFlip:
      ch.operators = {std::sqrt(1.0 - p) * Matrix2cd::Identity(),
                      std::sqrt(p) * pauli_y()};
      break;
  }
  return ch;
}

std::vector<ComplexMatrix> lift(const KrausChannel& channel, int n_qubits,
                                std::size_t max_operators) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("lift: qubit count " + std::to_string(n_qubits) +
                                " outside [1, " + std::to_string(kMaxQubits) + "]");
  }
  const std::size_t n_ops = channel.operators.size();
  std::size_t total = 1;
  for (int q = 0; q < n_qubits; ++q) total *= n_ops;
  if (total > max_operators) {
    throw std::runtime_error(
        "lift: " + std::to_string(total) + " lifted operators for " +
        to_string(channel.kind) + " on " + std::to_string(n_qubits) +
        " qubits exceeds the budget of " + std::to_string(max_operators) +
        "; use apply_sequential instead");
  }

  std::vector<ComplexMatrix> lifted;
  lifted.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    // Digits of idx in base n_ops select the factor on each qubit,
    // qubit 0 being the most significant digit.
    std::size_t rem = idx;
    ComplexMatrix op = ComplexMatrix::Identity(1, 1);
    std::vector<std::size_t> digits(n_qubits);
    for (int q = n_qubits - 1; q >= 0; --q) {
      digits[q] = rem % n_ops;
      rem /= n_ops;
    }
    for (int q = 0; q < n_qubits; ++q) {
      op = tensor(op, channel.operators[digits[q]]);
    }
    lifted.push_back(std::move(op));
  }
  return lifted;
}

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho,
                    std::span<const int> targets) {
  const int n = rho.n_qubits();
  const std::vector<int> tq = resolve_targets(targets, n);

  // Lifted operators over the target set, identity elsewhere.
  const std::size_t n_ops = channel.operators.size();
  std::size_t total = 1;
  for (std::size_t k = 0; k < tq.size(); ++k) total *= n_ops;
  if (total > kDefaultLiftBudget) {
    throw std::runtime_error("apply: " + std::to_string(total) +
                             " lifted operators exceeds the budget; use apply_sequential");
  }

  const Eigen::Index d = rho.dim();
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    std::vector<std::size_t> digits(tq.size());
    for (int k = static_cast<int>(tq.size()) - 1; k >= 0; --k) {
      digits[k] = rem % n_ops;
      rem /= n_ops;
    }
    ComplexMatrix op = ComplexMatrix::Identity(1, 1);
    std::size_t t_pos = 0;
    for (int q = 0; q < n; ++q) {
      if (t_pos < tq.size() && tq[t_pos] == q) {
        op = tensor(op, channel.operators[digits[t_pos]]);
        ++t_pos;
      } else {
        op = tensor(op, id);
      }
    }
    out.noalias() += op * rho.matrix() * op.adjoint();
  }
  return DensityMatrix(n, std::move(out));
}

DensityMatrix apply_sequential(const KrausChannel& channel, const DensityMatrix& rho,
                               std::span<const int> targets) {
  const int n = rho.n_qubits();
  std::vector<int> tq = resolve_targets(targets, n);
  ComplexMatrix m = rho.matrix();
  for (int q : tq) {
    m = detail::apply_local_kraus(m, channel.operators, q, n);
  }
  return DensityMatrix(n, std::move(m));
}

DensityMatrix ChannelAssignment::apply_to(const DensityMatrix& rho) const {
  return apply_sequential(channel, rho, targets);
}

}  // namespace qcorr
