#pragma once

#include <map>
#include <stdexcept>
#include <utility>

#include "qwalk/matrix2.hpp"

namespace qwalk {

/// Coin spinor: amplitudes on |0> (horizontal) and |1> (vertical).
struct Spinor {
    cplx up{0.0};
    cplx down{0.0};

    double norm2() const { return std::norm(up) + std::norm(down); }
    Spinor normalized() const;
};

inline Spinor operator*(const Mat2& m, const Spinor& s) {
    return {m(0, 0) * s.up + m(0, 1) * s.down, m(1, 0) * s.up + m(1, 1) * s.down};
}

inline cplx inner(const Spinor& a, const Spinor& b) {
    return std::conj(a.up) * b.up + std::conj(a.down) * b.down;
}

/// Sparse walker-coin state: integer position -> coin spinor.
/// Spinors with norm^2 below the pruning threshold are dropped.
class WalkerCoinState {
public:
    static constexpr double kPruneNorm2 = 1e-30;

    WalkerCoinState() = default;
    WalkerCoinState(int position, Spinor coin) { set(position, coin); }

    void set(int position, const Spinor& s);
    void add(int position, const Spinor& s);
    Spinor at(int position) const;  // zero spinor if absent

    const std::map<int, Spinor>& amplitudes() const { return amps_; }
    double norm2() const;
    bool empty() const { return amps_.empty(); }

    WalkerCoinState scaled(cplx factor) const;
    WalkerCoinState operator+(const WalkerCoinState& o) const;

private:
    std::map<int, Spinor> amps_;
};

/// Site-dependent coin assignments: (step n >= 1, position x) -> coin unitary.
/// Unlisted sites act as identity.
class CoinSchedule {
public:
    static constexpr double kUnitaryTol = 1e-10;

    CoinSchedule() = default;

    /// Throws std::invalid_argument if op is not unitary within tolerance.
    void set(int step, int position, const Mat2& op);
    const Mat2* find(int step, int position) const;
    Mat2 coin(int step, int position) const;  // identity when unlisted

    const std::map<std::pair<int, int>, Mat2>& entries() const { return entries_; }
    int max_step() const;
    bool empty() const { return entries_.empty(); }

private:
    std::map<std::pair<int, int>, Mat2> entries_;  // key: (step, position)
};

struct WalkSpec {
    int steps = 0;
    int initial_position = 0;
    Spinor initial_coin{1.0, 0.0};
    CoinSchedule schedule;

    /// Throws std::invalid_argument on negative step count or unnormalized coin.
    void validate(double norm_tol = 1e-9) const;
};

using PositionDistribution = std::map<int, double>;

/// One step U_n = T sum_x |x><x| (x) C_{x,n}: per-site coin rotation, then
/// the conditional shift (|0> component to x+1, |1> component to x-1).
WalkerCoinState apply_step(const WalkerCoinState& state, const CoinSchedule& schedule, int step);

WalkerCoinState evolve(const WalkSpec& spec);

PositionDistribution position_distribution(const WalkerCoinState& state);

/// d = 1/2 sum_x |p(x) - q(x)| over the union of supports.
double l1_distance(const PositionDistribution& p, const PositionDistribution& q);

/// F = <target| rho |target>. Throws std::invalid_argument unless rho is
/// Hermitian (1e-10) with unit trace (1e-6) and target is normalized.
double state_fidelity(const Mat2& rho, const Spinor& target);

}  // namespace qwalk
