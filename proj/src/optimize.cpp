#include "qcorr/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace qcorr {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_two_pi(double x) {
  double y = std::fmod(x, 2.0 * kPi);
  if (y < 0.0) y += 2.0 * kPi;
  return y;
}

std::vector<double> theta_grid(int points) {
  std::vector<double> g(points);
  if (points == 1) {
    g[0] = 0.0;
  } else {
    for (int i = 0; i < points; ++i) g[i] = kPi * i / (points - 1);
  }
  return g;
}

std::vector<double> phi_grid(int points) {
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = -kPi + 2.0 * kPi * i / points;
  return g;
}

// Symmetric-slice scan resolution; cheap relative to the product grid and
// fine enough that simplex refinement lands in the right basin.
constexpr int kSymmetricThetaPoints = 33;
constexpr int kSymmetricPhiPoints = 16;

}  // namespace

void OptimizerConfig::validate() const {
  if (theta_grid_points < 1 || phi_grid_points < 1 || top_seeds < 1) {
    throw std::invalid_argument("OptimizerConfig: grid points and top_seeds must be positive");
  }
  if (!(simplex_tolerance > 0.0)) {
    throw std::invalid_argument("OptimizerConfig: simplex_tolerance must be positive");
  }
  if (max_evaluations < 1) {
    throw std::invalid_argument("OptimizerConfig: max_evaluations must be positive");
  }
}

void canonicalize_angles(std::span<double> angles) {
  for (std::size_t j = 0; j + 1 < angles.size(); j += 2) {
    double theta = wrap_two_pi(angles[j]);
    double phi = angles[j + 1];
    if (theta > kPi) {
      theta = 2.0 * kPi - theta;
      phi += kPi;
    }
    phi = std::remainder(phi, 2.0 * kPi);
    if (phi >= kPi) phi -= 2.0 * kPi;
    angles[j] = theta;
    angles[j + 1] = phi;
  }
}

GridSeedResult grid_seed(const Objective& objective, int n_angle_pairs,
                         const OptimizerConfig& config) {
  config.validate();
  if (n_angle_pairs < 1) {
    throw std::invalid_argument("grid_seed: need at least one angle pair");
  }

  const std::vector<double> thetas = theta_grid(config.theta_grid_points);
  const std::vector<double> phis = phi_grid(config.phi_grid_points);
  const std::uint64_t per_qubit = static_cast<std::uint64_t>(thetas.size()) * phis.size();
  std::uint64_t total = 1;
  for (int k = 0; k < n_angle_pairs; ++k) total *= per_qubit;

  // When the product grid cannot be enumerated within the budget it is
  // stride-subsampled; a sparse subsample carries little information beyond
  // a few thousand points, so the partial scan is capped below the budget
  // and the symmetric-subspace stage of minimize() does the real seeding.
  constexpr std::uint64_t kSubsampleCap = 2000;
  const std::uint64_t budget = static_cast<std::uint64_t>(config.max_evaluations);
  std::uint64_t stride = 1;
  bool complete = true;
  if (total > budget) {
    const std::uint64_t count = std::min(budget, kSubsampleCap);
    stride = (total + count - 1) / count;
    complete = false;
  }

  GridSeedResult result;
  result.complete = complete;

  std::vector<SeedCandidate> candidates;
  std::vector<double> angles(2 * n_angle_pairs);

  auto consider = [&](const std::vector<double>& a) {
    const double v = objective(a);
    ++result.evaluations;
    candidates.push_back({a, v});
  };

  for (std::uint64_t idx = 0; idx < total; idx += stride) {
    std::uint64_t rem = idx;
    for (int k = n_angle_pairs - 1; k >= 0; --k) {
      const std::uint64_t pair = rem % per_qubit;
      rem /= per_qubit;
      angles[2 * k] = thetas[pair / phis.size()];
      angles[2 * k + 1] = phis[pair % phis.size()];
    }
    consider(angles);
  }

  // The exact sigma_z point, always present regardless of grid settings.
  std::fill(angles.begin(), angles.end(), 0.0);
  consider(angles);

  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const SeedCandidate& a, const SeedCandidate& b) {
                     return a.value < b.value;
                   });
  const std::size_t keep = std::min<std::size_t>(config.top_seeds, candidates.size());
  result.seeds.assign(candidates.begin(), candidates.begin() + keep);
  return result;
}

RefineResult refine(const Objective& objective, std::span<const double> seed,
                    const OptimizerConfig& config) {
  config.validate();
  const int dim = static_cast<int>(seed.size());
  if (dim < 1) {
    throw std::invalid_argument("refine: empty seed vector");
  }

  RefineResult result;
  result.evaluations = 0;

  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    return objective(x);
  };

  // Initial simplex: the seed plus one vertex per coordinate step.
  constexpr double kStep = 0.25;
  std::vector<std::vector<double>> verts;
  std::vector<double> fvals;
  verts.emplace_back(seed.begin(), seed.end());
  fvals.push_back(eval(verts[0]));
  for (int i = 0; i < dim; ++i) {
    std::vector<double> v(seed.begin(), seed.end());
    v[i] += kStep;
    verts.push_back(v);
    fvals.push_back(eval(verts.back()));
  }

  std::vector<double> best_x = verts[0];
  double best_f = fvals[0];
  auto note_best = [&](const std::vector<double>& x, double f) {
    if (f < best_f) {
      best_f = f;
      best_x = x;
    }
  };
  for (std::size_t i = 0; i < verts.size(); ++i) note_best(verts[i], fvals[i]);

  std::vector<std::size_t> order(verts.size());
  while (true) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });
    const std::size_t ib = order.front(), iw = order.back();
    const std::size_t is = order[order.size() - 2];  // second worst

    if (fvals[iw] - fvals[ib] < config.simplex_tolerance) {
      result.converged = true;
      break;
    }
    if (result.evaluations >= config.max_evaluations) {
      result.converged = false;
      break;
    }

    // Centroid of all vertices except the worst.
    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i < verts.size(); ++i) {
      if (i == iw) continue;
      for (int k = 0; k < dim; ++k) centroid[k] += verts[i][k];
    }
    for (int k = 0; k < dim; ++k) centroid[k] /= dim;

    auto blend = [&](double coef) {
      std::vector<double> x(dim);
      for (int k = 0; k < dim; ++k) {
        x[k] = centroid[k] + coef * (verts[iw][k] - centroid[k]);
      }
      return x;
    };

    const std::vector<double> xr = blend(-1.0);  // reflection
    const double fr = eval(xr);
    note_best(xr, fr);

    if (fr < fvals[ib]) {
      const std::vector<double> xe = blend(-2.0);  // expansion
      const double fe = eval(xe);
      note_best(xe, fe);
      if (fe < fr) {
        verts[iw] = xe;
        fvals[iw] = fe;
      } else {
        verts[iw] = xr;
        fvals[iw] = fr;
      }
      continue;
    }
    if (fr < fvals[is]) {
      verts[iw] = xr;
      fvals[iw] = fr;
      continue;
    }

    const bool outside = fr < fvals[iw];
    const std::vector<double> xc = blend(outside ? -0.5 : 0.5);
    const double fc = eval(xc);
    note_best(xc, fc);
    if (fc < std::min(fr, fvals[iw])) {
      verts[iw] = xc;
      fvals[iw] = fc;
      continue;
    }

    // Shrink toward the best vertex.
    for (std::size_t i = 0; i < verts.size(); ++i) {
      if (i == ib) continue;
      for (int k = 0; k < dim; ++k) {
        verts[i][k] = verts[ib][k] + 0.5 * (verts[i][k] - verts[ib][k]);
      }
      fvals[i] = eval(verts[i]);
      note_best(verts[i], fvals[i]);
      if (result.evaluations >= config.max_evaluations) break;
    }
  }

  result.angles = best_x;
  result.value = best_f;
  return result;
}

MinimizeResult minimize(const Objective& objective, int n_angle_pairs,
                        const OptimizerConfig& config) {
  config.validate();
  const GridSeedResult grid = grid_seed(objective, n_angle_pairs, config);

  MinimizeResult result;
  result.evaluations = grid.evaluations;
  result.grid_complete = grid.complete;

  std::vector<SeedCandidate> seeds = grid.seeds;

  // Scan and refine within the qubit-symmetric subspace (every pair equal);
  // the expanded result joins the seed pool. For permutation-invariant states
  // this stage finds the basin even when the full grid had to be subsampled.
  if (n_angle_pairs > 1) {
    auto expand = [n_angle_pairs](double theta, double phi) {
      std::vector<double> full(2 * n_angle_pairs);
      for (int k = 0; k < n_angle_pairs; ++k) {
        full[2 * k] = theta;
        full[2 * k + 1] = phi;
      }
      return full;
    };

    double best_theta = 0.0, best_phi = 0.0;
    double best_value = objective(expand(0.0, 0.0));
    ++result.evaluations;
    for (int it = 0; it < kSymmetricThetaPoints; ++it) {
      const double theta = kPi * it / (kSymmetricThetaPoints - 1);
      for (int ip = 0; ip < kSymmetricPhiPoints; ++ip) {
        const double phi = -kPi + 2.0 * kPi * ip / kSymmetricPhiPoints;
        const double v = objective(expand(theta, phi));
        ++result.evaluations;
        if (v < best_value) {
          best_value = v;
          best_theta = theta;
          best_phi = phi;
        }
      }
    }

    Objective symmetric = [&](std::span<const double> tp) {
      return objective(expand(tp[0], tp[1]));
    };
    const std::vector<double> sym_seed = {best_theta, best_phi};
    const RefineResult sym = refine(symmetric, sym_seed, config);
    result.evaluations += sym.evaluations;
    seeds.push_back({expand(sym.angles[0], sym.angles[1]), sym.value});
  }

  bool any_converged = false;
  bool have_best = false;
  std::vector<double> best_angles;
  double best_value = 0.0;
  for (const SeedCandidate& seed : seeds) {
    const RefineResult r = refine(objective, seed.angles, config);
    result.evaluations += r.evaluations;
    result.seed_outcomes.push_back({seed.value, r.value, r.evaluations, r.converged});
    any_converged = any_converged || r.converged;
    if (!have_best || r.value < best_value) {
      have_best = true;
      best_value = r.value;
      best_angles = r.angles;
    }
  }

  result.converged = any_converged;
  result.value = best_value;
  result.angles = std::move(best_angles);
  canonicalize_angles(result.angles);
  return result;
}

}  // namespace qcorr
