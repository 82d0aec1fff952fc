#pragma once

#include "qcorr/qmatrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qcorr {

enum class ChannelKind {
  AmplitudeDamping,
  PhaseDamping,
  Depolarizing,
  BitFlip,
  PhaseFlip,
  BitPhaseFlip,
};

const std::vector<ChannelKind>& all_channel_kinds();
std::string to_string(ChannelKind kind);
ChannelKind channel_kind_from_string(const std::string& name);

/// A named single-qubit channel: its Kraus operators at decoherence
/// parameter p. Operators are stored exactly as tabulated (two for damping
/// and flip channels, four for depolarizing) and satisfy
/// sum_k E_k^dag E_k = I within 1e-12.
struct KrausChannel {
  ChannelKind kind;
  double p;
  std::vector<Eigen::Matrix2cd> operators;
};

/// Builds the Kraus set for one channel kind. Requires p in [0, 1].
KrausChannel kraus_set(ChannelKind kind, double p);

inline constexpr std::size_t kDefaultLiftBudget = 4096;

/// All |operators|^n tensor-product combinations lifted to n qubits.
/// Exponential in n; refuses to materialize more than `max_operators`
/// (use apply_sequential for larger systems).
std::vector<ComplexMatrix> lift(const KrausChannel& channel, int n_qubits,
                                std::size_t max_operators = kDefaultLiftBudget);

/// Channel application in the naive lifted form: rho -> sum_k E_k rho E_k^dag
/// with E_k running over the tensor-product combinations on `targets`
/// (all qubits when targets is empty). Exact but exponential in |targets|.
DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho,
                    std::span<const int> targets = {});

/// Same map computed one target qubit at a time with index-strided kernels;
/// no lifted operators are materialized. Agrees with apply to 1e-10.
DensityMatrix apply_sequential(const KrausChannel& channel, const DensityMatrix& rho,
                               std::span<const int> targets = {});

/// A channel plus the qubits it acts on; empty targets means every qubit.
struct ChannelAssignment {
  KrausChannel channel;
  std::vector<int> targets;

  DensityMatrix apply_to(const DensityMatrix& rho) const;
};

}  // namespace qcorr
