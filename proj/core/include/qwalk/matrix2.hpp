#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>

namespace qwalk {

using cplx = std::complex<double>;

/// Dense 2x2 complex matrix acting on the coin space.
/// Entries are stored row-major: m(0,0), m(0,1), m(1,0), m(1,1).
struct Mat2 {
    std::array<cplx, 4> e{};

    Mat2() = default;
    Mat2(cplx a, cplx b, cplx c, cplx d) : e{a, b, c, d} {}

    cplx& operator()(int r, int c) { return e[static_cast<std::size_t>(2 * r + c)]; }
    const cplx& operator()(int r, int c) const { return e[static_cast<std::size_t>(2 * r + c)]; }

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 zero() { return {0.0, 0.0, 0.0, 0.0}; }
    static Mat2 sigma_x() { return {0.0, 1.0, 1.0, 0.0}; }
    static Mat2 sigma_y() { return {0.0, cplx(0, -1), cplx(0, 1), 0.0}; }
    static Mat2 sigma_z() { return {1.0, 0.0, 0.0, -1.0}; }
    static Mat2 hadamard();

    Mat2 operator*(const Mat2& o) const;
    Mat2 operator+(const Mat2& o) const;
    Mat2 operator-(const Mat2& o) const;
    Mat2 operator*(cplx s) const;
    Mat2& operator+=(const Mat2& o);

    Mat2 adjoint() const;
    Mat2 transpose() const;
    Mat2 conj() const;
    cplx trace() const { return e[0] + e[3]; }
    cplx det() const { return e[0] * e[3] - e[1] * e[2]; }

    bool is_finite() const;
    bool is_unitary(double tol = 1e-10) const;
    bool is_hermitian(double tol = 1e-12) const;
    /// Hermitian within tol and both eigenvalues >= -eig_tol.
    bool is_psd(double tol = 1e-12, double eig_tol = 1e-10) const;

    /// Eigenvalues of a Hermitian matrix, ascending.
    std::array<double, 2> hermitian_eigenvalues() const;

    std::string str() const;
};

inline Mat2 operator*(cplx s, const Mat2& m) { return m * s; }

/// max_ij |a_ij - b_ij|
double max_abs_diff(const Mat2& a, const Mat2& b);

/// min over global phase gamma of max_ij |a_ij - e^{i gamma} b_ij|.
/// Wave plates realize coins only up to such a phase.
double phase_distance(const Mat2& a, const Mat2& b);

/// Outer product |u><v| of two coin spinors given as (up, down) pairs.
Mat2 outer(cplx u0, cplx u1, cplx v0, cplx v1);

}  // namespace qwalk
