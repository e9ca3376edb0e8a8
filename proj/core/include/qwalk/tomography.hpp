#pragma once

#include <array>

#include "qwalk/walk.hpp"

namespace qwalk {

/// Outcome probabilities keyed by SIC element index 1..4.
/// Position mapping: element 1 <-> x=6, 2 <-> x=4, 3 <-> x=0, 4 <-> x=2
/// (element i is the outcome forbidden for input |psi^i>).
struct SicOutcome {
    std::array<double, 4> p{};  // p[i-1] = probability of element i

    void validate() const;  // each in [0,1], sum within 2e-2 of 1
    static SicOutcome from_positions(const PositionDistribution& dist);
    /// Forward Born probabilities p_i = <psi| E_i |psi> of a density matrix.
    static SicOutcome born(const Mat2& rho);
};

/// Linear SIC inversion rho = sum_i (3 p_i - 1/2) |xi^i><xi^i| after
/// renormalizing the row to unit total. May be non-PSD for noisy data;
/// project_psd is the separate clean-up step.
Mat2 reconstruct(const SicOutcome& outcome);

/// Nearest trace-1 PSD matrix under eigenvalue clipping.
Mat2 project_psd(const Mat2& rho);

/// F_i = <psi^i| rho_i |psi^i> from the raw (unprojected) reconstructions.
std::array<double, 4> fidelity_report(const std::array<SicOutcome, 4>& rows);

}  // namespace qwalk
