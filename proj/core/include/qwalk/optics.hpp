#pragma once

#include <map>
#include <vector>

#include "qwalk/walk.hpp"

namespace qwalk {

enum class PlateKind { hwp, qwp };

const char* plate_kind_name(PlateKind k);

/// A wave plate with its optic-axis angle relative to horizontal.
/// HWP angles are normalized to [-90, 90), QWP angles to [-180, 180).
struct WaveplateElement {
    PlateKind kind = PlateKind::hwp;
    double angle_deg = 0.0;
};

/// A plate placed in the network: covers one or more optical modes
/// (the dual-coverage case arises when a plate cannot be inserted into a
/// single mode without spanning its upper neighbor).
struct PlacedPlate {
    PlateKind kind = PlateKind::hwp;
    double angle_deg = 0.0;
    std::vector<int> modes;  // ascending

    bool covers(int mode) const;
};

/// R_HWP(theta) = [[cos 2t, sin 2t], [sin 2t, -cos 2t]]
Mat2 hwp_matrix(double theta_deg);

/// R_QWP(theta) = [[cos^2 t + i sin^2 t, (1-i) sin t cos t],
///                 [(1-i) sin t cos t,   sin^2 t + i cos^2 t]]
Mat2 qwp_matrix(double theta_deg);

Mat2 plate_matrix(const WaveplateElement& p);

/// Product of plates in photon traversal order (first element traversed first).
Mat2 compose_plates(const std::vector<WaveplateElement>& plates);

/// Decompose a coin unitary into at most three wave plates whose traversal
/// product equals the target up to global phase (within 1e-8). Preference:
/// fewest plates, then exact (phase-free) equality, then smallest sum of
/// |angle|. Throws std::invalid_argument for non-unitary targets.
std::vector<WaveplateElement> compile_coin(const Mat2& target);

/// Per-step placement of wave plates realizing a coin schedule.
class WaveplatePlan {
public:
    void add(int step, PlacedPlate plate);
    const std::vector<PlacedPlate>& plates_at(int step) const;
    const std::map<int, std::vector<PlacedPlate>>& steps() const { return steps_; }
    bool empty() const { return steps_.empty(); }
    std::size_t plate_count() const;

    /// Ordered composition of all plates covering `mode` at `step`.
    Mat2 mode_composition(int step, int mode) const;

    /// One record per plate: step, mode set, kind, angle (0.01 degree).
    std::string export_text() const;

private:
    std::map<int, std::vector<PlacedPlate>> steps_;  // traversal order per step
    static const std::vector<PlacedPlate> kEmpty;
};

/// Plan plate placements for a schedule walked from `initial_position`.
/// A scheduled mode flanked by occupied modes on both sides receives plates
/// spanning it and its upper neighbor; the neighbor then receives cancelling
/// plates restoring its own scheduled coin. Throws std::runtime_error when no
/// arrangement exists within the 3-plates-per-mode budget.
WaveplatePlan plan_placement(const CoinSchedule& schedule, int initial_position = 0);

}  // namespace qwalk
