#pragma once

#include <array>

#include "qwalk/walk.hpp"

namespace qwalk {

enum class UsdInput { plus, minus, superposition };

/// Unambiguous discrimination of |phi+-> = cos(phi/2)|0> +- sin(phi/2)|1>.
/// For superposition inputs the (unnormalized) coin is a|phi+> + b|phi->
/// with real a, b.
struct UsdSpec {
    double phi_deg = 45.0;
    UsdInput input = UsdInput::plus;
    double a = 1.0;
    double b = 0.0;

    void validate() const;
    Spinor input_coin() const;  // normalized
};

struct UsdOutcome {
    double p_conclusive_plus = 0.0;   // P(x = 1)
    double p_conclusive_minus = 0.0;  // P(x = -1)
    double p_inconclusive = 0.0;      // P(x = 3), equals eta_err for |phi+->

    /// a^2/b^2 law; +infinity when P(-1) = 0.
    double conclusive_ratio() const;
};

Spinor phi_plus(double phi_deg);
Spinor phi_minus(double phi_deg);

/// Three-step discrimination walk. Throws std::domain_error unless
/// 0 < phi <= 90 degrees.
WalkSpec usd_schedule(double phi_deg);

/// The phi-dependent coin placed at (x = +1, n = 2).
Mat2 usd_coin(double phi_deg);

UsdOutcome usd_expected(const UsdSpec& spec);

/// eta_err = |<phi+|phi->| = cos(phi).
double usd_eta_err(double phi_deg);

/// SIC target states |xi^1..4> and the orthogonal input states |psi^1..4>,
/// index in {1..4}.
Spinor sic_target_state(int i);
Spinor sic_input_state(int i);

/// Six-step walk realizing the SIC-POVM, with initial coin |psi^i>.
WalkSpec sic_schedule(int i);

/// Shared six-step coin schedule of the SIC walk (input-independent).
CoinSchedule sic_coin_schedule();

/// Position forbidden for input |psi^i>: 6, 4, 0, 2 for i = 1..4.
int sic_forbidden_position(int i);

/// Uniform 1/3 over the three allowed positions.
PositionDistribution sic_expected(int i);

}  // namespace qwalk
