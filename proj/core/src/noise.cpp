#include "qwalk/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qwalk/optics.hpp"

namespace qwalk {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t s = base ^ (0xa0761d6478bd642fULL * (index + 1));
    return splitmix64(s);
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double gaussian(std::mt19937_64& rng) {
    // Box-Muller; one value per call keeps draws independent of call order.
    double u1 = uniform01(rng);
    while (u1 <= 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::int64_t poisson(std::mt19937_64& rng, double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 256.0) {
        const double limit = std::exp(-mean);
        std::int64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform01(rng);
        } while (p > limit);
        return k - 1;
    }
    // Gaussian approximation for large means.
    const double v = mean + std::sqrt(mean) * gaussian(rng);
    return std::max<std::int64_t>(0, std::llround(v));
}

}  // namespace

void NoiseParams::validate() const {
    if (visibility < 0.0 || visibility > 1.0)
        throw std::invalid_argument("visibility must lie in [0, 1]");
    if (angle_jitter_deg < 0.0) throw std::invalid_argument("angle jitter must be >= 0");
    if (!(expected_counts > 0.0)) throw std::invalid_argument("expected counts must be > 0");
}

PositionCoinDensity::PositionCoinDensity(int min_position, int n_positions)
    : min_pos_(min_position),
      n_pos_(n_positions),
      rho_(Eigen::MatrixXcd::Zero(2 * n_positions, 2 * n_positions)) {}

Eigen::Index PositionCoinDensity::index(int position, int coin) const {
    const int off = position - min_pos_;
    if (off < 0 || off >= n_pos_) throw std::out_of_range("position outside density window");
    return static_cast<Eigen::Index>(2 * off + coin);
}

double PositionCoinDensity::trace() const { return rho_.trace().real(); }

double PositionCoinDensity::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

PositionDistribution PositionCoinDensity::position_distribution() const {
    PositionDistribution dist;
    for (int i = 0; i < n_pos_; ++i) {
        const double p = rho_(2 * i, 2 * i).real() + rho_(2 * i + 1, 2 * i + 1).real();
        if (p > 1e-15) dist[min_pos_ + i] = p;
    }
    return dist;
}

Mat2 PositionCoinDensity::coin_block(int position) const {
    const Eigen::Index i = index(position, 0);
    Mat2 m{rho_(i, i), rho_(i, i + 1), rho_(i + 1, i), rho_(i + 1, i + 1)};
    const double tr = m.trace().real();
    if (tr <= 1e-15) return Mat2::zero();
    return m * cplx(1.0 / tr, 0.0);
}

PositionCoinDensity noisy_evolve(const WalkSpec& spec, const NoiseParams& params) {
    spec.validate();
    params.validate();
    std::mt19937_64 rng(params.seed);

    const int N = spec.steps;
    const int n_pos = 2 * N + 1;
    const int min_pos = spec.initial_position - N;
    PositionCoinDensity dens(min_pos, n_pos);

    const Eigen::Index i0 = dens.index(spec.initial_position, 0);
    const Eigen::Vector2cd psi0(spec.initial_coin.up, spec.initial_coin.down);
    dens.matrix().block<2, 2>(i0, i0) = psi0 * psi0.adjoint();

    const Eigen::Index dim = dens.matrix().rows();
    for (int n = 1; n <= N; ++n) {
        // Step propagator with jittered plate angles for the scheduled coins.
        Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
        for (int x = min_pos; x <= min_pos + n_pos - 1; ++x) {
            Mat2 coin = Mat2::identity();
            if (const Mat2* scheduled = spec.schedule.find(n, x)) {
                auto plates = compile_coin(*scheduled);
                for (auto& p : plates) p.angle_deg += params.angle_jitter_deg * gaussian(rng);
                coin = compose_plates(plates);
            }
            const Eigen::Index src = dens.index(x, 0);
            for (int c = 0; c < 2; ++c) {
                if (x + 1 <= min_pos + n_pos - 1)
                    u(dens.index(x + 1, 0), src + c) += coin(0, c);
                if (x - 1 >= min_pos)
                    u(dens.index(x - 1, 1), src + c) += coin(1, c);
            }
        }
        dens.matrix() = u * dens.matrix() * u.adjoint();

        // Imperfect interference at the merges: damp every coherence between
        // the |0> and |1> polarization components by V (a coin-dephasing
        // channel, so the state stays positive and trace-1).
        const double v = params.visibility;
        for (Eigen::Index i = 0; i < dim; ++i)
            for (Eigen::Index j = 0; j < dim; ++j)
                if ((i % 2) != (j % 2)) dens.matrix()(i, j) *= v;
    }
    return dens;
}

TrialResult sample_counts(const PositionDistribution& dist, const NoiseParams& params,
                          const PositionDistribution* reference) {
    params.validate();
    std::mt19937_64 rng(params.seed ^ 0x5bf0360778c2d0e1ULL);

    TrialResult out;
    for (int attempt = 0; attempt < 2; ++attempt) {
        out.counts.clear();
        std::int64_t total = 0;
        for (const auto& [x, p] : dist) {
            const std::int64_t c = poisson(rng, params.expected_counts * p);
            out.counts[x] = c;
            total += c;
        }
        if (total == 0) continue;
        out.sampled.clear();
        for (const auto& [x, c] : out.counts)
            out.sampled[x] = static_cast<double>(c) / static_cast<double>(total);
        out.d = l1_distance(out.sampled, reference ? *reference : dist);
        return out;
    }
    throw std::runtime_error("photon counting produced zero total counts twice");
}

ErrorBudget error_budget(const WalkSpec& spec, const NoiseParams& params, int trials) {
    if (trials < 1) throw std::invalid_argument("trial count must be >= 1");
    const PositionDistribution theory = position_distribution(evolve(spec));

    ErrorBudget out;
    out.per_trial_d.reserve(static_cast<std::size_t>(trials));
    double fid_sum = 0.0;
    for (int t = 0; t < trials; ++t) {
        NoiseParams p = params;
        p.seed = derive_seed(params.seed, static_cast<std::uint64_t>(t));
        const PositionDistribution noisy = noisy_evolve(spec, p).position_distribution();
        const TrialResult trial = sample_counts(noisy, p, &theory);
        out.per_trial_d.push_back(trial.d);

        double bc = 0.0;
        for (const auto& [x, q] : theory) {
            auto it = trial.sampled.find(x);
            if (it != trial.sampled.end()) bc += std::sqrt(q * it->second);
        }
        fid_sum += bc * bc;
    }
    out.mean_fidelity = fid_sum / trials;

    std::vector<double> sorted = out.per_trial_d;
    std::sort(sorted.begin(), sorted.end());
    const auto at_quantile = [&](double q) {
        const std::size_t i = std::min(sorted.size() - 1,
                                       static_cast<std::size_t>(q * static_cast<double>(sorted.size())));
        return sorted[i];
    };
    out.median_d = at_quantile(0.5);
    out.p90_d = at_quantile(0.9);
    return out;
}

}  // namespace qwalk
