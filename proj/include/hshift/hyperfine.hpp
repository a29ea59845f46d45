#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <string>

#include "hshift/constants.hpp"
#include "hshift/errors.hpp"

namespace hshift {

/// Labels of the four hyperfine levels of ground-state atomic hydrogen,
/// in order of increasing zero-field energy: a is the singlet-like ground
/// state, d the stretched |++> state.  The labels follow state content,
/// not energy order: the c and d branches cross near 16.7 T, above which
/// E_d < E_c while the labels keep their low-field meaning.
enum class StateLabel { a = 0, b = 1, c = 2, d = 3 };

inline const char* to_string(StateLabel s) {
    switch (s) {
        case StateLabel::a: return "a";
        case StateLabel::b: return "b";
        case StateLabel::c: return "c";
        case StateLabel::d: return "d";
    }
    throw domain_error("hyperfine: invalid state label");
}

/// Result of diagonalising the single-atom spin Hamiltonian at one field.
///
/// Basis ordering for all 4-vectors and matrices is
///   {|++>, |+->, |-+>, |-->}  with  |m_s m_i>  and  + meaning +1/2,
/// electron spin first.  `states` holds one normalised eigenvector per
/// column, indexed by StateLabel; `energies` are in Hz (E/h).
struct HyperfineSpectrum {
    double field_B = 0.0;               ///< tesla
    double theta = 0.0;                 ///< hyperfine mixing angle, rad
    std::array<double, 4> energies{};   ///< Hz, indexed by StateLabel
    Eigen::Matrix4d states = Eigen::Matrix4d::Zero();

    double energy(StateLabel s) const { return energies[static_cast<int>(s)]; }
    Eigen::Vector4d state(StateLabel s) const { return states.col(static_cast<int>(s)); }
};

namespace detail {

inline void require_field(double B, const char* who) {
    if (!(B >= 0.0) || !std::isfinite(B))
        throw domain_error(std::string(who) + ": magnetic field must be finite and >= 0");
}

} // namespace detail

/// Mixing angle theta of the a/c doublet, tan(2 theta) = (A/h) / ((gamma_e + gamma_p) B).
/// Strictly decreasing in B; exactly pi/4 at B = 0 (atan2(x, 0) is exact).
inline double mixing_angle(const PhysicalConstants& c, double B) {
    detail::require_field(B, "mixing_angle");
    return 0.5 * std::atan2(c.A_over_h, (c.gamma_e + c.gamma_p) * B);
}

/// Spin Hamiltonian of one H atom divided by h, in Hz, basis {++, +-, -+, --}.
///
///   H/h = (A/h) I.S / hbar^2 + gamma_e B m_s - gamma_p B m_i
///
/// The contact term contributes A/4h on the diagonal (sign from m_s m_i) and
/// couples |+-> <-> |-+> with A/2h.  The matrix is real symmetric and, in
/// this ordering, already tridiagonal.
inline Eigen::Matrix4d hamiltonian_matrix(const PhysicalConstants& c, double B) {
    detail::require_field(B, "hamiltonian_matrix");
    const double q = 0.25 * c.A_over_h;
    const double x = 0.5 * c.A_over_h;
    const double ze = 0.5 * c.gamma_e * B;
    const double zp = 0.5 * c.gamma_p * B;

    Eigen::Matrix4d H = Eigen::Matrix4d::Zero();
    H(0, 0) = q + ze - zp;
    H(1, 1) = -q + ze + zp;
    H(2, 2) = -q - ze - zp;
    H(3, 3) = q - ze + zp;
    H(1, 2) = H(2, 1) = x;
    return H;
}

/// Breit-Rabi closed-form energies in Hz, indexed by StateLabel.
///
///   E_a = -A/4h - R        E_b = A/4h - (gamma_e - gamma_p) B / 2
///   E_c = -A/4h + R        E_d = A/4h + (gamma_e - gamma_p) B / 2
///
/// with R = hypot(A/2h, (gamma_e + gamma_p) B / 2).
inline std::array<double, 4> breit_rabi_closed_form(const PhysicalConstants& c, double B) {
    detail::require_field(B, "breit_rabi_closed_form");
    const double q = 0.25 * c.A_over_h;
    const double R = std::hypot(0.5 * c.A_over_h, 0.5 * (c.gamma_e + c.gamma_p) * B);
    const double zm = 0.5 * (c.gamma_e - c.gamma_p) * B;
    return {-q - R, q - zm, -q + R, q + zm};
}

/// Diagonalise the spin Hamiltonian and attach adiabatic labels.
///
/// b and d are identified by their dominant |--> and |++> components (pure
/// to machine precision at any field); the two mixed states are labelled
/// a (lower) and c (upper).  Column phases are fixed so that the dominant
/// component of b and d and the |+-> / |-+> components of c / a are
/// positive, which makes <+-|c> = cos(theta) and <-+|a> = cos(theta).
inline HyperfineSpectrum eigensystem(const PhysicalConstants& c, double B) {
    detail::require_field(B, "eigensystem");
    const Eigen::Matrix4d H = hamiltonian_matrix(c, B);

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(H);
    if (solver.info() != Eigen::Success)
        throw domain_error("eigensystem: diagonalisation failed");

    const Eigen::Vector4d ev = solver.eigenvalues();   // ascending
    Eigen::Matrix4d V = solver.eigenvectors();

    int ib = 0, id = 0;
    for (int j = 1; j < 4; ++j) {
        if (std::abs(V(3, j)) > std::abs(V(3, ib))) ib = j;
        if (std::abs(V(0, j)) > std::abs(V(0, id))) id = j;
    }
    if (ib == id || std::abs(V(3, ib)) < 0.999 || std::abs(V(0, id)) < 0.999)
        throw domain_error("eigensystem: could not identify the pure b/d states");

    int ia = -1, ic = -1;
    for (int j = 0; j < 4; ++j) {
        if (j == ib || j == id) continue;
        (ia < 0 ? ia : ic) = j;
    }
    if (ev(ia) > ev(ic)) std::swap(ia, ic);

    HyperfineSpectrum s;
    s.field_B = B;
    s.theta = mixing_angle(c, B);

    const std::array<int, 4> col = {ia, ib, ic, id};
    // phase convention: make the canonical component of each column positive
    const std::array<int, 4> anchor = {2, 3, 1, 0};
    for (int l = 0; l < 4; ++l) {
        s.energies[l] = ev(col[l]);
        Eigen::Vector4d v = V.col(col[l]);
        if (v(anchor[l]) < 0.0) v = -v;
        s.states.col(l) = v;
    }

    // a <= b <= c holds at every field (E_c - E_b >= (gamma_e - gamma_p) B / 2);
    // only c/d may cross.
    const double slack = 1e-6 * (std::abs(s.energies[0]) + c.A_over_h);
    if (s.energies[0] > s.energies[1] + slack || s.energies[1] > s.energies[2] + slack ||
        s.energies[1] > s.energies[3] + slack)
        throw domain_error("eigensystem: labelled energies violate the a <= b <= c, b <= d order");

    return s;
}

/// Transition frequency E_to - E_from in Hz.  Antisymmetric in its labels.
inline double transition_frequency(const HyperfineSpectrum& s, StateLabel from, StateLabel to) {
    if (from == to)
        throw domain_error("transition_frequency: identical labels");
    return s.energy(to) - s.energy(from);
}

} // namespace hshift
