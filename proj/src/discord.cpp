#include "qcorr/discord.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qcorr {

namespace {

constexpr double kEntropyFloor = 1e-12;
constexpr double kZeroClampWindow = 1e-9;

double xlog2x(double p) { return p > kEntropyFloor ? p * std::log2(p) : 0.0; }

// Unitary whose rows are the measurement vectors <v1|, <v2| of the basis
// (theta, phi); diag(U rho U^dag) gives the outcome probabilities.
Eigen::Matrix2cd basis_rotation(double theta, double phi) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const complexd e_plus{std::cos(phi), std::sin(phi)};
  Eigen::Matrix2cd u;
  u << c, s * e_plus, s, -c * e_plus;
  return u;
}

// Shared per-state data for the discord objectives. Evaluation rotates a
// scratch copy of rho into the measurement frame one qubit at a time.
class MeasurementFrame {
 public:
  explicit MeasurementFrame(const DensityMatrix& rho)
      : rho_(rho.matrix()), n_(rho.n_qubits()) {
    for (int q = 0; q < n_; ++q) {
      const std::array<int, 1> keep{q};
      marginals_.push_back(partial_trace(rho, keep).matrix());
    }
  }

  int n_qubits() const { return n_; }
  const Eigen::Matrix2cd& marginal(int q) const { return marginals_[q]; }

  // U rho U^dag for the product rotation defined by the angle vector.
  const ComplexMatrix& rotated(std::span<const double> angles) const {
    work_ = rho_;
    for (int q = 0; q < n_; ++q) {
      detail::conjugate_local_unitary(
          work_, basis_rotation(angles[2 * q], angles[2 * q + 1]), q, n_);
    }
    return work_;
  }

  // Entropy of the joint outcome distribution, i.e. S of the pinched state.
  double measured_entropy(std::span<const double> angles) const {
    const ComplexMatrix& r = rotated(angles);
    double h = 0.0;
    for (Eigen::Index i = 0; i < r.rows(); ++i) h -= xlog2x(r(i, i).real());
    return h;
  }

  // Same for the single-qubit marginal of qubit q.
  double measured_marginal_entropy(int q, double theta, double phi) const {
    const Eigen::Matrix2cd u = basis_rotation(theta, phi);
    const Eigen::Matrix2cd m = u * marginals_[q] * u.adjoint();
    return -xlog2x(m(0, 0).real()) - xlog2x(m(1, 1).real());
  }

 private:
  ComplexMatrix rho_;
  int n_;
  std::vector<Eigen::Matrix2cd, Eigen::aligned_allocator<Eigen::Matrix2cd>> marginals_;
  mutable ComplexMatrix work_;
};

double entropy_bits(const ComplexMatrix& m) {
  const std::vector<double> eig = hermitian_eigenvalues(m);
  double h = 0.0;
  for (double v : eig) h -= xlog2x(v);
  return h;
}

double clamp_zero(double value) {
  return (value < 0.0 && value > -kZeroClampWindow) ? 0.0 : value;
}

DiscordResult run_minimization(const Objective& objective, int n_qubits,
                               const OptimizerConfig& config) {
  const MinimizeResult m = minimize(objective, n_qubits, config);
  DiscordResult result;
  result.value = clamp_zero(m.value);
  result.minimizer = profile_from_angles(m.angles);
  result.evaluations = m.evaluations;
  result.converged = m.converged;
  return result;
}

}  // namespace

MeasurementBasis measurement_basis(double theta, double phi) {
  std::array<double, 2> a{theta, phi};
  canonicalize_angles(a);
  MeasurementBasis b;
  b.theta = a[0];
  b.phi = a[1];
  const double c = std::cos(0.5 * b.theta);
  const double s = std::sin(0.5 * b.theta);
  const complexd e_plus{std::cos(b.phi), std::sin(b.phi)};
  b.pi1 << c * c, c * s * e_plus, c * s * std::conj(e_plus), s * s;
  b.pi2 = Eigen::Matrix2cd::Identity() - b.pi1;
  return b;
}

MeasurementProfile profile_from_angles(std::span<const double> angles) {
  if (angles.size() % 2 != 0) {
    throw std::invalid_argument("profile_from_angles: odd angle count");
  }
  MeasurementProfile profile;
  profile.reserve(angles.size() / 2);
  for (std::size_t j = 0; j < angles.size(); j += 2) {
    profile.push_back(measurement_basis(angles[j], angles[j + 1]));
  }
  return profile;
}

MeasurementProfile sigma_z_profile(int n_qubits) {
  return MeasurementProfile(n_qubits, measurement_basis(0.0, 0.0));
}

bool is_sigma_z_profile(const MeasurementProfile& profile, double tol) {
  for (const MeasurementBasis& b : profile) {
    if (std::abs(b.pi1(0, 1)) > tol) return false;
  }
  return true;
}

double shannon_entropy_bits(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) h -= xlog2x(p);
  return h;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_bits(rho.matrix());
}

double relative_entropy_bits(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("relative_entropy_bits: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> er(rho.matrix());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sigma.matrix());
  if (er.info() != Eigen::Success || es.info() != Eigen::Success) {
    throw std::runtime_error("relative_entropy_bits: eigensolver failed");
  }
  constexpr double kLogFloor = 1e-15;
  double value = 0.0;
  const ComplexMatrix overlap = er.eigenvectors().adjoint() * es.eigenvectors();
  for (Eigen::Index i = 0; i < rho.dim(); ++i) {
    const double lam = er.eigenvalues()(i);
    if (lam <= kEntropyFloor) continue;
    value += lam * std::log2(lam);
    for (Eigen::Index j = 0; j < rho.dim(); ++j) {
      const double nu = std::max(es.eigenvalues()(j), kLogFloor);
      value -= lam * std::norm(overlap(i, j)) * std::log2(nu);
    }
  }
  return value;
}

DensityMatrix dephase(const DensityMatrix& rho, const MeasurementProfile& profile) {
  const int n = rho.n_qubits();
  if (static_cast<int>(profile.size()) != n) {
    throw std::invalid_argument("dephase: profile has " +
                                std::to_string(profile.size()) +
                                " bases for " + std::to_string(n) + " qubits");
  }
  ComplexMatrix m = rho.matrix();
  for (int q = 0; q < n; ++q) {
    const std::array<Eigen::Matrix2cd, 2> ops{profile[q].pi1, profile[q].pi2};
    m = detail::apply_local_kraus(m, ops, q, n);
  }
  return DensityMatrix(n, std::move(m));
}

double global_qd_at(const DensityMatrix& rho, const MeasurementProfile& profile) {
  const int n = rho.n_qubits();
  if (static_cast<int>(profile.size()) != n) {
    throw std::invalid_argument("global_qd_at: profile length mismatch");
  }
  const MeasurementFrame frame(rho);
  std::vector<double> angles;
  for (const MeasurementBasis& b : profile) {
    angles.push_back(b.theta);
    angles.push_back(b.phi);
  }
  // S(rho || Phi(rho)) = S(Phi(rho)) - S(rho) for pinching maps; the same
  // identity applies to each marginal term.
  double value = frame.measured_entropy(angles) - entropy_bits(rho.matrix());
  for (int q = 0; q < n; ++q) {
    value -= frame.measured_marginal_entropy(q, profile[q].theta, profile[q].phi) -
             entropy_bits(frame.marginal(q));
  }
  return value;
}

DiscordResult global_qd(const DensityMatrix& rho, const OptimizerConfig& config) {
  const MeasurementFrame frame(rho);
  const int n = rho.n_qubits();
  const double s_rho = entropy_bits(rho.matrix());
  std::vector<double> s_marginal(n);
  for (int q = 0; q < n; ++q) s_marginal[q] = entropy_bits(frame.marginal(q));

  Objective objective = [&](std::span<const double> angles) {
    double value = frame.measured_entropy(angles) - s_rho;
    for (int q = 0; q < n; ++q) {
      value -= frame.measured_marginal_entropy(q, angles[2 * q], angles[2 * q + 1]) -
               s_marginal[q];
    }
    return value;
  };
  return run_minimization(objective, n, config);
}

DiscordResult gqd_hs(const DensityMatrix& rho, const OptimizerConfig& config) {
  const MeasurementFrame frame(rho);
  const int n = rho.n_qubits();

  // ||rho - Phi(rho)||^2 equals the off-diagonal weight of rho in the
  // measurement frame: pinching zeroes exactly those entries and the
  // Hilbert-Schmidt norm is unitarily invariant.
  Objective objective = [&](std::span<const double> angles) {
    const ComplexMatrix& r = frame.rotated(angles);
    return r.squaredNorm() - r.diagonal().squaredNorm();
  };
  return run_minimization(objective, n, config);
}

DiscordResult gqd_entropic(const DensityMatrix& rho, const OptimizerConfig& config) {
  const MeasurementFrame frame(rho);
  const int n = rho.n_qubits();
  const double s_rho = entropy_bits(rho.matrix());
  double marginal_sum = 0.0;
  for (int q = 0; q < n; ++q) marginal_sum += entropy_bits(frame.marginal(q));

  // Inner bracket, negated: minimizing this maximizes
  // sum_j S(Phi_j(rho_j)) - S(Phi(rho)).
  Objective objective = [&](std::span<const double> angles) {
    double bracket = -frame.measured_entropy(angles);
    for (int q = 0; q < n; ++q) {
      bracket += frame.measured_marginal_entropy(q, angles[2 * q], angles[2 * q + 1]);
    }
    return -bracket;
  };

  const MinimizeResult m = minimize(objective, n, config);
  DiscordResult result;
  result.value = clamp_zero(marginal_sum - s_rho + m.value);
  result.minimizer = profile_from_angles(m.angles);
  result.evaluations = m.evaluations;
  result.converged = m.converged;
  return result;
}

namespace {

double closed_form_werner3(ChannelKind kind, double p, double mu) {
  const double w = mu * mu;
  const double q = 1.0 - p;
  switch (kind) {
    case ChannelKind::AmplitudeDamping:
    case ChannelKind::PhaseDamping:
      return 0.5 * q * q * q * w;
    case ChannelKind::Depolarizing: {
      const double a = std::pow(4.0 - 3.0 * p, 4) * q * q;
      const double b = p * p * std::pow(4.0 + p * (7.0 - 3.0 * p), 2);
      return (a + b) * w / 512.0;
    }
    case ChannelKind::PhaseFlip:
      return 0.5 * std::pow(1.0 - 2.0 * p, 6) * w;
    case ChannelKind::BitFlip:
    case ChannelKind::BitPhaseFlip: {
      const double cubic = 1.0 - p * (3.0 - 3.0 * p + 2.0 * p * p);
      return (1.5 * p * p * std::pow(1.0 - 3.0 * p + 2.0 * p * p, 2) +
              0.5 * cubic * cubic) * w;
    }
  }
  throw std::logic_error("closed_form_werner3: unknown channel kind");
}

double closed_form_werner6(ChannelKind kind, double p, double mu) {
  const double w = mu * mu;
  const double q = 1.0 - p;
  switch (kind) {
    case ChannelKind::AmplitudeDamping:
    case ChannelKind::PhaseDamping:
      return 0.5 * std::pow(q, 6) * w;
    case ChannelKind::Depolarizing:
      return 0.5 * std::pow(q, 12) * w;
    case ChannelKind::PhaseFlip:
      return 0.5 * std::pow(1.0 - 2.0 * p, 12) * w;
    case ChannelKind::BitFlip:
    case ChannelKind::BitPhaseFlip: {
      const double t1 = 20.0 * std::pow(q, 6) * std::pow(p, 6);
      const double t2 = 7.5 * std::pow(q, 4) * std::pow(p, 4) *
                        std::pow(1.0 - 2.0 * p + 2.0 * p * p, 2);
      const double t3 = 0.5 * std::pow(std::pow(q, 6) + std::pow(p, 6), 2);
      const double t4 = 3.0 * q * q * p * p *
                        std::pow(1.0 - 4.0 * p + 6.0 * p * p - 4.0 * p * p * p +
                                     2.0 * std::pow(p, 4),
                                 2);
      return (t1 + t2 + t3 + t4) * w;
    }
  }
  throw std::logic_error("closed_form_werner6: unknown channel kind");
}

double closed_form_rindler(ChannelKind kind, double p, double r) {
  const double c = std::cos(r);
  const double w = std::pow(c, 4);
  const double q = 1.0 - p;
  switch (kind) {
    case ChannelKind::AmplitudeDamping:
    case ChannelKind::PhaseDamping:
      return 0.5 * q * q * q * w;
    case ChannelKind::Depolarizing: {
      const double a = std::pow(4.0 - 3.0 * p, 4) * q * q;
      const double b = p * p * (4.0 - 7.0 * p + 3.0 * p * p);
      return (a + b) * w / 512.0;
    }
    case ChannelKind::PhaseFlip:
      return 0.5 * std::pow(1.0 - 2.0 * p, 6) * w;
    case ChannelKind::BitPhaseFlip: {
      const double cubic = 1.0 - 3.0 * p + 3.0 * p * p - 2.0 * p * p * p;
      return (1.5 * p * p * std::pow(1.0 - 3.0 * p + 2.0 * p * p, 2) +
              0.5 * cubic * cubic) * w;
    }
    case ChannelKind::BitFlip:
      throw std::invalid_argument(
          "gqd_closed_form: no closed-form row for bit-flip on the rindler family");
  }
  throw std::logic_error("closed_form_rindler: unknown channel kind");
}

}  // namespace

bool has_closed_form(const StateFamily& family, ChannelKind kind) {
  if (family.kind == StateKind::RindlerGHZ) return kind != ChannelKind::BitFlip;
  return family.n_qubits == 3 || family.n_qubits == 6;
}

bool closed_form_is_discrepant(const StateFamily& family, ChannelKind kind) {
  if (kind != ChannelKind::Depolarizing) return false;
  return family.kind == StateKind::RindlerGHZ ||
         (family.kind == StateKind::WernerGHZ && family.n_qubits == 3);
}

double gqd_closed_form(const StateFamily& family, ChannelKind kind, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("gqd_closed_form: p = " + std::to_string(p) +
                                " outside [0, 1]");
  }
  if (family.kind == StateKind::RindlerGHZ) {
    return closed_form_rindler(kind, p, family.r);
  }
  if (family.n_qubits == 3) return closed_form_werner3(kind, p, family.mu);
  if (family.n_qubits == 6) return closed_form_werner6(kind, p, family.mu);
  throw std::invalid_argument(
      "gqd_closed_form: closed forms exist only for 3- and 6-qubit werner-ghz "
      "states (got n = " + std::to_string(family.n_qubits) + ")");
}

}  // namespace qcorr
