#include "qwalk/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace qwalk {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kPhaseTol = 1e-8;
constexpr double kStructTol = 1e-6;

double wrap_deg(double a, double lo, double period) {
    double r = std::fmod(a - lo, period);
    if (r < 0) r += period;
    return r + lo;
}

double normalize_angle(PlateKind kind, double deg) {
    return kind == PlateKind::hwp ? wrap_deg(deg, -90.0, 180.0) : wrap_deg(deg, -180.0, 360.0);
}

// Unit-quaternion (w, x, y, z) of target/sqrt(det): V = wI - i(x sx + y sy + z sz).
struct Quat {
    double w, x, y, z;
};

Quat su2_quaternion(const Mat2& u) {
    const cplx s = std::sqrt(u.det());
    const Mat2 v = u * (1.0 / s);
    Quat q;
    q.w = 0.5 * (v(0, 0) + v(1, 1)).real();
    q.z = 0.5 * (v(1, 1) - v(0, 0)).imag();
    q.x = -0.5 * (v(0, 1) + v(1, 0)).imag();
    q.y = 0.5 * (v(1, 0) - v(0, 1)).real();
    return q;
}

struct Candidate {
    std::vector<WaveplateElement> plates;
    bool exact = false;
    double angle_sum = 0.0;
    int order_rank = 0;  // generation preference for full ties
};

void push_candidate(std::vector<Candidate>& out, const Mat2& target,
                    std::vector<WaveplateElement> plates, int rank) {
    for (auto& p : plates) p.angle_deg = normalize_angle(p.kind, p.angle_deg);
    const Mat2 prod = compose_plates(plates);
    if (phase_distance(prod, target) > kPhaseTol) return;
    Candidate c;
    c.exact = max_abs_diff(prod, target) <= kPhaseTol;
    for (const auto& p : plates) c.angle_sum += std::abs(p.angle_deg);
    c.order_rank = rank;
    c.plates = std::move(plates);
    out.push_back(std::move(c));
}

// Every subset of HWPs flipped by 90 degrees yields the same coin up to sign.
void push_with_hwp_flips(std::vector<Candidate>& out, const Mat2& target,
                         const std::vector<WaveplateElement>& plates, int rank) {
    std::vector<std::size_t> hwp_idx;
    for (std::size_t i = 0; i < plates.size(); ++i)
        if (plates[i].kind == PlateKind::hwp) hwp_idx.push_back(i);
    const std::size_t variants = std::size_t{1} << hwp_idx.size();
    for (std::size_t mask = 0; mask < variants; ++mask) {
        auto v = plates;
        for (std::size_t b = 0; b < hwp_idx.size(); ++b)
            if (mask & (std::size_t{1} << b)) v[hwp_idx[b]].angle_deg += 90.0;
        push_candidate(out, target, v, rank);
    }
}

}  // namespace

const char* plate_kind_name(PlateKind k) { return k == PlateKind::hwp ? "HWP" : "QWP"; }

bool PlacedPlate::covers(int mode) const {
    return std::find(modes.begin(), modes.end(), mode) != modes.end();
}

Mat2 hwp_matrix(double theta_deg) {
    const double t = 2.0 * theta_deg * kDegToRad;
    return {std::cos(t), std::sin(t), std::sin(t), -std::cos(t)};
}

Mat2 qwp_matrix(double theta_deg) {
    const double t = theta_deg * kDegToRad;
    const double c = std::cos(t), s = std::sin(t);
    const cplx od = cplx(1.0, -1.0) * s * c;
    return {cplx(c * c, s * s), od, od, cplx(s * s, c * c)};
}

Mat2 plate_matrix(const WaveplateElement& p) {
    return p.kind == PlateKind::hwp ? hwp_matrix(p.angle_deg) : qwp_matrix(p.angle_deg);
}

Mat2 compose_plates(const std::vector<WaveplateElement>& plates) {
    Mat2 m = Mat2::identity();
    for (const auto& p : plates) m = plate_matrix(p) * m;
    return m;
}

std::vector<WaveplateElement> compile_coin(const Mat2& target) {
    if (!target.is_unitary(1e-8)) throw std::invalid_argument("compile target is not unitary");
    if (phase_distance(target, Mat2::identity()) <= kPhaseTol) return {};

    const Quat q = su2_quaternion(target);
    std::vector<Candidate> cands;

    // Single HWP: pi rotation about an axis in the x-z plane.
    if (std::abs(q.w) <= kStructTol && std::abs(q.y) <= kStructTol) {
        const double uh = std::atan2(q.x, q.z) / kDegToRad;
        push_with_hwp_flips(cands, target, {{PlateKind::hwp, uh / 2.0}}, 0);
    }

    // Single QWP: pi/2 rotation, axis in the x-z plane.
    if (std::abs(q.y) <= kStructTol && std::abs(std::abs(q.w) - std::sqrt(0.5)) <= kStructTol) {
        const double sg = q.w >= 0 ? 1.0 : -1.0;
        const double uq = std::atan2(sg * q.x, sg * q.z) / kDegToRad;
        push_candidate(cands, target, {{PlateKind::qwp, uq / 2.0}}, 0);
    }

    // HWP followed by QWP (and the reverse): possible when x^2 + z^2 = 1/2.
    if (std::abs(q.x * q.x + q.z * q.z - 0.5) <= kStructTol) {
        const double r2 = std::sqrt(2.0);
        for (double sg : {1.0, -1.0}) {
            const double uh = std::atan2(sg * r2 * q.x, sg * r2 * q.z);
            // traversal H then Q: quaternion diff uh - uq
            const double dq = std::atan2(sg * r2 * q.y, -sg * r2 * q.w);
            push_candidate(cands, target,
                           {{PlateKind::hwp, uh / 2.0 / kDegToRad},
                            {PlateKind::qwp, (uh - dq) / 2.0 / kDegToRad}},
                           0);
            // traversal Q then H
            const double dh = std::atan2(-sg * r2 * q.y, -sg * r2 * q.w);
            push_candidate(cands, target,
                           {{PlateKind::qwp, (uh - dh) / 2.0 / kDegToRad},
                            {PlateKind::hwp, uh / 2.0 / kDegToRad}},
                           1);
        }
    }

    // General QWP-HWP-QWP gadget.
    for (double sg : {1.0, -1.0}) {
        const double cs = std::hypot(q.w, q.y);
        const double delta = cs > 1e-12 ? std::atan2(sg * q.y, -sg * q.w) : 0.0;
        for (double branch : {1.0, -1.0}) {
            const double ss = branch * std::sqrt(std::max(0.0, 1.0 - cs * cs));
            const double sigma = std::atan2(ss, cs);
            double v = 0.0;
            if (std::abs(ss) > 1e-12) {
                const double sgn = ss > 0 ? 1.0 : -1.0;
                v = std::atan2(sg * sgn * q.z, -sg * sgn * q.x) - sigma;
            }
            const double u1 = v + sigma + delta;
            const double u2 = v + sigma - delta;
            push_with_hwp_flips(cands, target,
                                {{PlateKind::qwp, u1 / 2.0 / kDegToRad},
                                 {PlateKind::hwp, v / 2.0 / kDegToRad},
                                 {PlateKind::qwp, u2 / 2.0 / kDegToRad}},
                                2);
        }
    }

    if (cands.empty()) throw std::runtime_error("no wave-plate decomposition found");

    std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.plates.size() != b.plates.size()) return a.plates.size() < b.plates.size();
        if (a.exact != b.exact) return a.exact;
        if (std::abs(a.angle_sum - b.angle_sum) > 1e-9) return a.angle_sum < b.angle_sum;
        return a.order_rank < b.order_rank;
    });
    return cands.front().plates;
}

const std::vector<PlacedPlate> WaveplatePlan::kEmpty{};

void WaveplatePlan::add(int step, PlacedPlate plate) { steps_[step].push_back(std::move(plate)); }

const std::vector<PlacedPlate>& WaveplatePlan::plates_at(int step) const {
    auto it = steps_.find(step);
    return it == steps_.end() ? kEmpty : it->second;
}

std::size_t WaveplatePlan::plate_count() const {
    std::size_t n = 0;
    for (const auto& [step, ps] : steps_) n += ps.size();
    return n;
}

Mat2 WaveplatePlan::mode_composition(int step, int mode) const {
    Mat2 m = Mat2::identity();
    for (const auto& p : plates_at(step))
        if (p.covers(mode)) m = plate_matrix({p.kind, p.angle_deg}) * m;
    return m;
}

std::string WaveplatePlan::export_text() const {
    std::ostringstream os;
    os << "step,modes,kind,angle_deg\n";
    char buf[32];
    for (const auto& [step, ps] : steps_) {
        for (const auto& p : ps) {
            os << step << ',';
            for (std::size_t i = 0; i < p.modes.size(); ++i)
                os << (i ? "|" : "") << p.modes[i];
            std::snprintf(buf, sizeof buf, "%.2f", p.angle_deg);
            os << ',' << plate_kind_name(p.kind) << ',' << buf << '\n';
        }
    }
    return os.str();
}

WaveplatePlan plan_placement(const CoinSchedule& schedule, int initial_position) {
    const int n_steps = schedule.max_step();

    // Structural support before each step: union over the two basis coins.
    std::map<int, std::set<int>> support;
    for (int basis = 0; basis < 2; ++basis) {
        WalkerCoinState st(initial_position, basis == 0 ? Spinor{1.0, 0.0} : Spinor{0.0, 1.0});
        for (int n = 1; n <= n_steps; ++n) {
            for (const auto& [x, s] : st.amplitudes()) support[n].insert(x);
            st = apply_step(st, schedule, n);
        }
    }

    WaveplatePlan plan;
    for (int n = 1; n <= n_steps; ++n) {
        const auto& occ = support[n];
        std::set<int> handled;
        for (const auto& [key, coin] : schedule.entries()) {
            if (key.first != n) continue;
            const int x = key.second;
            if (handled.count(x)) continue;
            const auto plates = compile_coin(coin);
            if (plates.empty()) continue;

            const bool interior = occ.count(x) && occ.count(x - 2) && occ.count(x + 2);
            if (!interior) {
                for (const auto& p : plates) plan.add(n, {p.kind, p.angle_deg, {x}});
                continue;
            }

            // Plates span the upper neighbor; restore its scheduled coin on top.
            for (const auto& p : plates) plan.add(n, {p.kind, p.angle_deg, {x, x + 2}});
            const Mat2 spanned = compose_plates(plates);
            const Mat2 correction = schedule.coin(n, x + 2) * spanned.adjoint();
            std::vector<WaveplateElement> corr;
            if (phase_distance(correction, Mat2::identity()) > 1e-8) corr = compile_coin(correction);
            if (plates.size() + corr.size() > 3)
                throw std::runtime_error("waveplate planning failed: mode " + std::to_string(x + 2) +
                                         " at step " + std::to_string(n) +
                                         " exceeds the 3-plate budget");
            for (const auto& p : corr) plan.add(n, {p.kind, p.angle_deg, {x + 2}});
            handled.insert(x + 2);
        }
    }
    return plan;
}

}  // namespace qwalk
