#pragma once

#include <map>
#include <vector>

#include "qwalk/walk.hpp"

namespace qwalk {

/// Per final position x: coin-in -> coin-out amplitude transfer K_x.
/// Positions with vanishing transfer are kept with K_x = 0 so completeness
/// audits see the full support of the walk.
struct KrausSet {
    std::map<int, Mat2> operators;

    /// max entry deviation of sum_x K_x^dag K_x from identity.
    double completeness_residual() const;
};

struct PovmElement {
    int position = 0;
    Mat2 matrix;  // E_x = K_x^dag K_x

    bool is_valid(double herm_tol = 1e-12, double eig_tol = 1e-10) const {
        return matrix.is_psd(herm_tol, eig_tol);
    }
};

/// Kraus operators of the walk-plus-position-measurement channel, obtained by
/// evolving the basis coins |0> and |1> and reading the final spinor at each
/// reachable position. Reachable positions are those of the structural support
/// {x : |x - x0| <= N, x = x0 + N (mod 2)}.
KrausSet kraus_from_walk(const CoinSchedule& schedule, int steps, int initial_position = 0);

std::vector<PovmElement> povm_from_kraus(const KrausSet& k);

struct Rank1Match {
    bool matched = false;
    double residual = 0.0;  // max-entry |E - weight |t><t||
};

/// Checks E ~ weight |target><target| within 1e-8 max-entry.
Rank1Match match_rank1(const PovmElement& e, const Spinor& target, double weight);

}  // namespace qwalk
