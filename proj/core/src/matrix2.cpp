#include "qwalk/matrix2.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qwalk {

Mat2 Mat2::hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, s, s, -s};
}

Mat2 Mat2::operator*(const Mat2& o) const {
    return {e[0] * o.e[0] + e[1] * o.e[2], e[0] * o.e[1] + e[1] * o.e[3],
            e[2] * o.e[0] + e[3] * o.e[2], e[2] * o.e[1] + e[3] * o.e[3]};
}

Mat2 Mat2::operator+(const Mat2& o) const {
    return {e[0] + o.e[0], e[1] + o.e[1], e[2] + o.e[2], e[3] + o.e[3]};
}

Mat2 Mat2::operator-(const Mat2& o) const {
    return {e[0] - o.e[0], e[1] - o.e[1], e[2] - o.e[2], e[3] - o.e[3]};
}

Mat2 Mat2::operator*(cplx s) const { return {e[0] * s, e[1] * s, e[2] * s, e[3] * s}; }

Mat2& Mat2::operator+=(const Mat2& o) {
    for (int i = 0; i < 4; ++i) e[static_cast<std::size_t>(i)] += o.e[static_cast<std::size_t>(i)];
    return *this;
}

Mat2 Mat2::adjoint() const { return {std::conj(e[0]), std::conj(e[2]), std::conj(e[1]), std::conj(e[3])}; }

Mat2 Mat2::transpose() const { return {e[0], e[2], e[1], e[3]}; }

Mat2 Mat2::conj() const { return {std::conj(e[0]), std::conj(e[1]), std::conj(e[2]), std::conj(e[3])}; }

bool Mat2::is_finite() const {
    for (const auto& x : e)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    return true;
}

bool Mat2::is_unitary(double tol) const {
    return is_finite() && max_abs_diff(adjoint() * (*this), identity()) <= tol;
}

bool Mat2::is_hermitian(double tol) const {
    return is_finite() && max_abs_diff(*this, adjoint()) <= tol;
}

std::array<double, 2> Mat2::hermitian_eigenvalues() const {
    const double tr = trace().real();
    const double d = det().real();
    double disc = tr * tr / 4.0 - d;
    disc = std::max(disc, 0.0);
    const double r = std::sqrt(disc);
    return {tr / 2.0 - r, tr / 2.0 + r};
}

bool Mat2::is_psd(double tol, double eig_tol) const {
    if (!is_hermitian(tol)) return false;
    return hermitian_eigenvalues()[0] >= -eig_tol;
}

std::string Mat2::str() const {
    std::ostringstream os;
    os << "[[" << e[0] << ", " << e[1] << "], [" << e[2] << ", " << e[3] << "]]";
    return os.str();
}

double max_abs_diff(const Mat2& a, const Mat2& b) {
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
        m = std::max(m, std::abs(a.e[static_cast<std::size_t>(i)] - b.e[static_cast<std::size_t>(i)]));
    return m;
}

double phase_distance(const Mat2& a, const Mat2& b) {
    // Phase minimizing the Frobenius distance; for genuinely phase-equal
    // matrices this is also the max-entry minimizer.
    cplx ip = 0.0;
    for (int i = 0; i < 4; ++i)
        ip += std::conj(b.e[static_cast<std::size_t>(i)]) * a.e[static_cast<std::size_t>(i)];
    if (std::abs(ip) < 1e-300) return max_abs_diff(a, b);
    const cplx phase = ip / std::abs(ip);
    return max_abs_diff(a, b * phase);
}

Mat2 outer(cplx u0, cplx u1, cplx v0, cplx v1) {
    return {u0 * std::conj(v0), u0 * std::conj(v1), u1 * std::conj(v0), u1 * std::conj(v1)};
}

}  // namespace qwalk
