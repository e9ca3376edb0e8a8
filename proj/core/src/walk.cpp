#include "qwalk/walk.hpp"

#include <algorithm>
#include <cmath>

namespace qwalk {

Spinor Spinor::normalized() const {
    const double n = std::sqrt(norm2());
    if (n == 0.0) throw std::invalid_argument("cannot normalize a zero spinor");
    return {up / n, down / n};
}

void WalkerCoinState::set(int position, const Spinor& s) {
    if (s.norm2() < kPruneNorm2)
        amps_.erase(position);
    else
        amps_[position] = s;
}

void WalkerCoinState::add(int position, const Spinor& s) {
    auto it = amps_.find(position);
    if (it == amps_.end()) {
        set(position, s);
        return;
    }
    it->second.up += s.up;
    it->second.down += s.down;
    if (it->second.norm2() < kPruneNorm2) amps_.erase(it);
}

Spinor WalkerCoinState::at(int position) const {
    auto it = amps_.find(position);
    return it == amps_.end() ? Spinor{} : it->second;
}

double WalkerCoinState::norm2() const {
    double n = 0.0;
    for (const auto& [x, s] : amps_) n += s.norm2();
    return n;
}

WalkerCoinState WalkerCoinState::scaled(cplx factor) const {
    WalkerCoinState out;
    for (const auto& [x, s] : amps_) out.set(x, {s.up * factor, s.down * factor});
    return out;
}

WalkerCoinState WalkerCoinState::operator+(const WalkerCoinState& o) const {
    WalkerCoinState out = *this;
    for (const auto& [x, s] : o.amps_) out.add(x, s);
    return out;
}

void CoinSchedule::set(int step, int position, const Mat2& op) {
    if (step < 1) throw std::invalid_argument("coin schedule step index must be >= 1");
    if (!op.is_unitary(kUnitaryTol))
        throw std::invalid_argument("scheduled coin at (step " + std::to_string(step) +
                                    ", x=" + std::to_string(position) + ") is not unitary");
    entries_[{step, position}] = op;
}

const Mat2* CoinSchedule::find(int step, int position) const {
    auto it = entries_.find({step, position});
    return it == entries_.end() ? nullptr : &it->second;
}

Mat2 CoinSchedule::coin(int step, int position) const {
    const Mat2* m = find(step, position);
    return m ? *m : Mat2::identity();
}

int CoinSchedule::max_step() const {
    int m = 0;
    for (const auto& [key, op] : entries_) m = std::max(m, key.first);
    return m;
}

void WalkSpec::validate(double norm_tol) const {
    if (steps < 0) throw std::invalid_argument("step count must be >= 0");
    if (std::abs(initial_coin.norm2() - 1.0) > norm_tol)
        throw std::invalid_argument("initial coin spinor is not normalized");
}

WalkerCoinState apply_step(const WalkerCoinState& state, const CoinSchedule& schedule, int step) {
    if (step < 1) throw std::invalid_argument("step index must be >= 1");
    WalkerCoinState out;
    for (const auto& [x, s] : state.amplitudes()) {
        const Spinor r = schedule.coin(step, x) * s;
        if (std::norm(r.up) >= WalkerCoinState::kPruneNorm2) out.add(x + 1, {r.up, 0.0});
        if (std::norm(r.down) >= WalkerCoinState::kPruneNorm2) out.add(x - 1, {0.0, r.down});
    }
    return out;
}

WalkerCoinState evolve(const WalkSpec& spec) {
    spec.validate();
    WalkerCoinState state(spec.initial_position, spec.initial_coin);
    for (int n = 1; n <= spec.steps; ++n) state = apply_step(state, spec.schedule, n);
    return state;
}

PositionDistribution position_distribution(const WalkerCoinState& state) {
    PositionDistribution dist;
    for (const auto& [x, s] : state.amplitudes()) dist[x] = s.norm2();
    return dist;
}

double l1_distance(const PositionDistribution& p, const PositionDistribution& q) {
    double d = 0.0;
    auto ip = p.begin();
    auto iq = q.begin();
    while (ip != p.end() || iq != q.end()) {
        if (iq == q.end() || (ip != p.end() && ip->first < iq->first)) {
            d += std::abs(ip->second);
            ++ip;
        } else if (ip == p.end() || iq->first < ip->first) {
            d += std::abs(iq->second);
            ++iq;
        } else {
            d += std::abs(ip->second - iq->second);
            ++ip;
            ++iq;
        }
    }
    return d / 2.0;
}

double state_fidelity(const Mat2& rho, const Spinor& target) {
    if (!rho.is_hermitian(1e-10)) throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-6)
        throw std::invalid_argument("density matrix trace differs from 1");
    const Spinor t = target.normalized();
    const Spinor rt = rho * t;
    return inner(t, rt).real();
}

}  // namespace qwalk
