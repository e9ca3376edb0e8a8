#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>

#include "qwalk/walk.hpp"

namespace qwalk {

struct NoiseParams {
    double visibility = 0.992;      // per-step interference visibility
    double angle_jitter_deg = 0.0;  // std dev of per-plate setting error
    double expected_counts = 1e4;   // mean total coincidence counts
    std::uint64_t seed = 0;

    void validate() const;
};

/// Density operator on the (position x coin) space spanned by a finite
/// position window. Basis index: (x - min_position) * 2 + coin.
class PositionCoinDensity {
public:
    PositionCoinDensity(int min_position, int n_positions);

    int min_position() const { return min_pos_; }
    int n_positions() const { return n_pos_; }
    Eigen::MatrixXcd& matrix() { return rho_; }
    const Eigen::MatrixXcd& matrix() const { return rho_; }

    Eigen::Index index(int position, int coin) const;
    double trace() const;
    double min_eigenvalue() const;
    PositionDistribution position_distribution() const;
    /// Coin state conditioned on position (normalized); zero matrix if the
    /// position carries no weight.
    Mat2 coin_block(int position) const;

private:
    int min_pos_;
    int n_pos_;
    Eigen::MatrixXcd rho_;
};

/// Evolve a walk under imperfections: every scheduled coin is realized as its
/// wave-plate decomposition with each plate angle perturbed by one Gaussian
/// draw (the setting error of the run), and after every step the coherence
/// between the two polarization components merging at each output mode is
/// scaled by the visibility.
PositionCoinDensity noisy_evolve(const WalkSpec& spec, const NoiseParams& params);

struct TrialResult {
    std::map<int, std::int64_t> counts;
    PositionDistribution sampled;  // counts / total
    double d = 0.0;                // 1-norm distance vs the reference
};

/// Poisson photon counting with mean expected_counts * p(x) per position.
/// The distance is taken against `reference` (the noiseless theory when
/// provided, otherwise the sampled-from distribution itself).
TrialResult sample_counts(const PositionDistribution& dist, const NoiseParams& params,
                          const PositionDistribution* reference = nullptr);

struct ErrorBudget {
    std::vector<double> per_trial_d;  // ordered by trial index
    double median_d = 0.0;
    double p90_d = 0.0;
    double mean_fidelity = 0.0;  // Bhattacharyya fidelity vs theory
};

/// Runs `trials` independent noisy realizations of the walk, each with a
/// per-trial derived seed, and aggregates distances against the noiseless
/// theory distribution.
ErrorBudget error_budget(const WalkSpec& spec, const NoiseParams& params, int trials);

}  // namespace qwalk
