#include "qwalk/povm.hpp"

#include <cmath>

namespace qwalk {

double KrausSet::completeness_residual() const {
    Mat2 sum = Mat2::zero();
    for (const auto& [x, k] : operators) sum += k.adjoint() * k;
    return max_abs_diff(sum, Mat2::identity());
}

KrausSet kraus_from_walk(const CoinSchedule& schedule, int steps, int initial_position) {
    if (steps < 0) throw std::invalid_argument("step count must be >= 0");

    WalkSpec spec;
    spec.steps = steps;
    spec.initial_position = initial_position;
    spec.schedule = schedule;

    spec.initial_coin = {1.0, 0.0};
    const WalkerCoinState col0 = evolve(spec);
    spec.initial_coin = {0.0, 1.0};
    const WalkerCoinState col1 = evolve(spec);

    KrausSet out;
    for (int x = initial_position - steps; x <= initial_position + steps; x += 2) {
        const Spinor a = col0.at(x);
        const Spinor b = col1.at(x);
        out.operators[x] = Mat2{a.up, b.up, a.down, b.down};
    }
    return out;
}

std::vector<PovmElement> povm_from_kraus(const KrausSet& k) {
    std::vector<PovmElement> out;
    out.reserve(k.operators.size());
    for (const auto& [x, kx] : k.operators) out.push_back({x, kx.adjoint() * kx});
    return out;
}

Rank1Match match_rank1(const PovmElement& e, const Spinor& target, double weight) {
    if (weight <= 0.0 || weight > 1.0) throw std::invalid_argument("weight must lie in (0, 1]");
    const Spinor t = target.normalized();
    const Mat2 expected = outer(t.up, t.down, t.up, t.down) * cplx(weight, 0.0);
    const double residual = max_abs_diff(e.matrix, expected);
    return {residual <= 1e-8, residual};
}

}  // namespace qwalk
