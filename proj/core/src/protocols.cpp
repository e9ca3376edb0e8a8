#include "qwalk/protocols.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace qwalk {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
}

void UsdSpec::validate() const {
    if (!(phi_deg > 0.0 && phi_deg <= 90.0))
        throw std::domain_error("phi must lie in (0, 90] degrees");
    if (input == UsdInput::superposition && a == 0.0 && b == 0.0)
        throw std::invalid_argument("superposition weights (a, b) must not both be zero");
}

Spinor phi_plus(double phi_deg) {
    const double h = phi_deg * kDegToRad / 2.0;
    return {std::cos(h), std::sin(h)};
}

Spinor phi_minus(double phi_deg) {
    const double h = phi_deg * kDegToRad / 2.0;
    return {std::cos(h), -std::sin(h)};
}

Spinor UsdSpec::input_coin() const {
    validate();
    switch (input) {
        case UsdInput::plus:
            return phi_plus(phi_deg);
        case UsdInput::minus:
            return phi_minus(phi_deg);
        case UsdInput::superposition: {
            const Spinor p = phi_plus(phi_deg);
            const Spinor m = phi_minus(phi_deg);
            return Spinor{a * p.up + b * m.up, a * p.down + b * m.down}.normalized();
        }
    }
    throw std::logic_error("unreachable");
}

double UsdOutcome::conclusive_ratio() const {
    if (p_conclusive_minus == 0.0) return std::numeric_limits<double>::infinity();
    return p_conclusive_plus / p_conclusive_minus;
}

Mat2 usd_coin(double phi_deg) {
    if (!(phi_deg > 0.0 && phi_deg <= 90.0))
        throw std::domain_error("phi must lie in (0, 90] degrees");
    if (phi_deg == 90.0) return Mat2::sigma_x();  // exact orthogonal endpoint
    const double t = std::tan(phi_deg * kDegToRad / 2.0);
    const double c = std::sqrt(1.0 - t * t);
    return {c, t, t, -c};
}

WalkSpec usd_schedule(double phi_deg) {
    // Coin sites follow supplementary Table I: the phi-dependent coin sits at
    // (x = +1, n = 2) and sigma_x at (x = -1, n = 2).
    WalkSpec spec;
    spec.steps = 3;
    spec.initial_coin = phi_plus(phi_deg);
    spec.schedule.set(2, 1, usd_coin(phi_deg));
    spec.schedule.set(2, -1, Mat2::sigma_x());
    spec.schedule.set(3, 0, Mat2::hadamard());
    return spec;
}

double usd_eta_err(double phi_deg) {
    if (!(phi_deg > 0.0 && phi_deg <= 90.0))
        throw std::domain_error("phi must lie in (0, 90] degrees");
    if (phi_deg == 90.0) return 0.0;  // exact orthogonal endpoint
    return std::abs(inner(phi_plus(phi_deg), phi_minus(phi_deg)));
}

UsdOutcome usd_expected(const UsdSpec& spec) {
    spec.validate();
    const double phi = spec.phi_deg * kDegToRad;
    const double s2 = std::sin(phi / 2.0) * std::sin(phi / 2.0);
    const double cphi = spec.phi_deg == 90.0 ? 0.0 : std::cos(phi);

    double a = 0.0, b = 0.0;
    switch (spec.input) {
        case UsdInput::plus:
            a = 1.0;
            break;
        case UsdInput::minus:
            b = 1.0;
            break;
        case UsdInput::superposition:
            a = spec.a;
            b = spec.b;
            break;
    }
    const double n2 = (a + b) * (a + b) * cphi + 2.0 * (a * a + b * b) * s2;
    UsdOutcome out;
    out.p_conclusive_plus = 2.0 * a * a * s2 / n2;
    out.p_conclusive_minus = 2.0 * b * b * s2 / n2;
    out.p_inconclusive = (a + b) * (a + b) * cphi / n2;
    return out;
}

Spinor sic_target_state(int i) {
    const double r3 = 1.0 / std::sqrt(3.0);
    const cplx lambda = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    switch (i) {
        case 1:
            return {1.0, 0.0};
        case 2:
            return {r3, r3 * std::sqrt(2.0)};
        case 3:
            return {r3, r3 * std::sqrt(2.0) * lambda};
        case 4:
            return {r3, r3 * std::sqrt(2.0) * std::conj(lambda)};
        default:
            throw std::invalid_argument("SIC index must lie in {1..4}");
    }
}

Spinor sic_input_state(int i) {
    const double r3 = 1.0 / std::sqrt(3.0);
    const cplx lambda = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    switch (i) {
        case 1:
            return {0.0, 1.0};
        case 2:
            return {r3 * std::sqrt(2.0), -r3};
        case 3:
            return {r3 * std::sqrt(2.0), -r3 * lambda};
        case 4:
            return {r3 * std::sqrt(2.0), -r3 * std::conj(lambda)};
        default:
            throw std::invalid_argument("SIC index must lie in {1..4}");
    }
}

CoinSchedule sic_coin_schedule() {
    const double r2 = 1.0 / std::sqrt(2.0);
    const double r3 = 1.0 / std::sqrt(3.0);
    const double pi = std::numbers::pi;

    CoinSchedule sched;
    sched.set(2, 1, Mat2{r2, -r2, -r2, -r2});
    sched.set(2, -1, Mat2::sigma_x());
    sched.set(3, 0, Mat2{-r2, r2, r2, r2});
    sched.set(4, 1, Mat2{r3 * std::sqrt(2.0), r3, r3, -r3 * std::sqrt(2.0)});
    sched.set(4, -1, Mat2::sigma_x());
    sched.set(5, 0, Mat2{r2 * std::polar(1.0, -pi / 3.0), r2 * std::polar(1.0, pi / 6.0),
                         r2 * std::polar(1.0, pi / 3.0), r2 * std::polar(1.0, -pi / 6.0)});
    sched.set(6, -1, Mat2::sigma_x());
    return sched;
}

WalkSpec sic_schedule(int i) {
    WalkSpec spec;
    spec.steps = 6;
    spec.initial_coin = sic_input_state(i);
    spec.schedule = sic_coin_schedule();
    return spec;
}

int sic_forbidden_position(int i) {
    switch (i) {
        case 1:
            return 6;
        case 2:
            return 4;
        case 3:
            return 0;
        case 4:
            return 2;
        default:
            throw std::invalid_argument("SIC index must lie in {1..4}");
    }
}

PositionDistribution sic_expected(int i) {
    const int forbidden = sic_forbidden_position(i);
    PositionDistribution dist;
    for (int x : {0, 2, 4, 6})
        if (x != forbidden) dist[x] = 1.0 / 3.0;
    return dist;
}

}  // namespace qwalk
