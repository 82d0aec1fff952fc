#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qcorr {

/// Budgets for the derivative-free angle search. The defaults size a full
/// parameter sweep at six qubits to minutes on a desktop. Everything is
/// deterministic: no randomized restarts.
struct OptimizerConfig {
  int theta_grid_points = 5;    // grid over theta in [0, pi]
  int phi_grid_points = 4;      // grid over phi in [-pi, pi)
  int top_seeds = 3;            // seeds handed to simplex refinement
  double simplex_tolerance = 1e-8;  // objective spread at termination
  long max_evaluations = 20000;     // per stage (grid, each refinement)

  void validate() const;
};

/// Objective over an angle vector laid out as [theta_0, phi_0, theta_1, ...].
/// Must be pure: deterministic for fixed inputs.
using Objective = std::function<double(std::span<const double>)>;

struct SeedCandidate {
  std::vector<double> angles;
  double value;
};

struct GridSeedResult {
  std::vector<SeedCandidate> seeds;  // best first (ascending value)
  long evaluations = 0;
  bool complete = true;  // false when the product grid was subsampled to fit the budget
};

/// Evaluates the objective on the product angle grid (stride-subsampled when
/// it exceeds max_evaluations) plus the exact sigma_z point (all theta = 0),
/// returning the top_seeds best vectors.
GridSeedResult grid_seed(const Objective& objective, int n_angle_pairs,
                         const OptimizerConfig& config);

struct RefineResult {
  std::vector<double> angles;
  double value;
  long evaluations = 0;
  bool converged = false;
};

/// Nelder-Mead simplex descent from a seed vector. Never returns a value
/// above the seed's.
RefineResult refine(const Objective& objective, std::span<const double> seed,
                    const OptimizerConfig& config);

struct SeedOutcome {
  double seed_value;
  double refined_value;
  long evaluations;
  bool converged;
};

struct MinimizeResult {
  std::vector<double> angles;  // phi canonicalized to [-pi, pi)
  double value;
  long evaluations = 0;
  bool converged = false;
  bool grid_complete = true;
  std::vector<SeedOutcome> seed_outcomes;
};

/// Full minimization: grid seeding, a refinement pass restricted to the
/// qubit-symmetric angle subspace (all pairs equal), then full-dimensional
/// refinement from the top seeds. Returns the best result found.
MinimizeResult minimize(const Objective& objective, int n_angle_pairs,
                        const OptimizerConfig& config = {});

/// Wraps phi into [-pi, pi) and theta into [0, pi] using the label-swap
/// identity (theta, phi) ~ (2 pi - theta, phi + pi).
void canonicalize_angles(std::span<double> angles);

}  // namespace qcorr
