#include "qwalk/tomography.hpp"

#include <cmath>

#include "qwalk/protocols.hpp"

namespace qwalk {

void SicOutcome::validate() const {
    double sum = 0.0;
    for (double v : p) {
        if (v < 0.0 || v > 1.0) throw std::invalid_argument("SIC outcome probability outside [0, 1]");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 2e-2)
        throw std::invalid_argument("SIC outcome probabilities sum too far from 1");
}

SicOutcome SicOutcome::from_positions(const PositionDistribution& dist) {
    const auto at = [&](int x) {
        auto it = dist.find(x);
        return it == dist.end() ? 0.0 : it->second;
    };
    return {{at(6), at(4), at(0), at(2)}};
}

SicOutcome SicOutcome::born(const Mat2& rho) {
    SicOutcome out;
    for (int i = 1; i <= 4; ++i) {
        const Spinor xi = sic_target_state(i);
        const Spinor rx = rho * xi;
        double p = 0.5 * inner(xi, rx).real();
        if (p < 0.0 && p > -1e-12) p = 0.0;  // rounding at a forbidden outcome
        out.p[static_cast<std::size_t>(i - 1)] = p;
    }
    return out;
}

Mat2 reconstruct(const SicOutcome& outcome) {
    outcome.validate();
    double sum = outcome.p[0] + outcome.p[1] + outcome.p[2] + outcome.p[3];
    if (sum <= 0.0) throw std::invalid_argument("SIC outcome probabilities sum to zero");

    Mat2 rho = Mat2::zero();
    for (int i = 1; i <= 4; ++i) {
        const double pi = outcome.p[static_cast<std::size_t>(i - 1)] / sum;
        const Spinor xi = sic_target_state(i);
        rho += outer(xi.up, xi.down, xi.up, xi.down) * cplx(3.0 * pi - 0.5, 0.0);
    }
    // Force an exactly Hermitian result against rounding.
    return (rho + rho.adjoint()) * cplx(0.5, 0.0);
}

Mat2 project_psd(const Mat2& rho) {
    if (!rho.is_hermitian(1e-10)) throw std::invalid_argument("project_psd expects a Hermitian matrix");

    const auto eig = rho.hermitian_eigenvalues();
    if (eig[0] >= 0.0) {
        const double tr = rho.trace().real();
        return rho * cplx(1.0 / tr, 0.0);
    }

    // Eigenvector of the 2x2 Hermitian matrix for each eigenvalue.
    const cplx b = rho(0, 1);
    const double a = rho(0, 0).real(), d = rho(1, 1).real();
    Mat2 out = Mat2::zero();
    double kept = 0.0;
    for (double lam : eig) {
        if (lam <= 0.0) continue;
        cplx v0, v1;
        if (std::abs(b) > 1e-14) {
            v0 = b;
            v1 = cplx(lam - a, 0.0);
        } else {
            v0 = std::abs(lam - a) < std::abs(lam - d) ? 1.0 : 0.0;
            v1 = cplx(1.0, 0.0) - v0;
        }
        const double n = std::sqrt(std::norm(v0) + std::norm(v1));
        v0 /= n;
        v1 /= n;
        out += outer(v0, v1, v0, v1) * cplx(lam, 0.0);
        kept += lam;
    }
    if (kept <= 0.0) throw std::invalid_argument("matrix has no positive spectral weight");
    return out * cplx(1.0 / kept, 0.0);
}

std::array<double, 4> fidelity_report(const std::array<SicOutcome, 4>& rows) {
    std::array<double, 4> out{};
    for (int i = 1; i <= 4; ++i) {
        const Mat2 rho = reconstruct(rows[static_cast<std::size_t>(i - 1)]);
        const Spinor psi = sic_input_state(i);
        const Spinor rp = rho * psi;
        out[static_cast<std::size_t>(i - 1)] = inner(psi, rp).real();
    }
    return out;
}

}  // namespace qwalk
