#pragma once

#include <cmath>

namespace hshift {

/// Physical constants used throughout the library, SI units unless noted.
///
/// Gyromagnetic ratios are quoted in Hz/T (i.e. gamma/2pi); energies that
/// come out of the spin Hamiltonian are therefore frequencies in Hz.
struct PhysicalConstants {
    double h;         ///< Planck constant, J s
    double hbar;      ///< reduced Planck constant, J s
    double k_B;       ///< Boltzmann constant, J/K
    double m_H;       ///< hydrogen atom mass, kg
    double gamma_e;   ///< electron gyromagnetic ratio, Hz/T
    double gamma_p;   ///< proton gyromagnetic ratio, Hz/T
    double A_over_h;  ///< ground-state hyperfine splitting of H, Hz

    /// gamma_p / gamma_e, the small parameter of the nuclear-side shifts.
    double gyromagnetic_ratio() const { return gamma_p / gamma_e; }
};

/// CODATA 2018 exact/recommended values. m_H is m_p + m_e; the 13.6 eV
/// binding correction is 1.5e-8 relative and irrelevant at our precision.
inline PhysicalConstants default_constants() {
    PhysicalConstants c{};
    c.h = 6.62607015e-34;
    c.hbar = 1.054571817e-34;
    c.k_B = 1.380649e-23;
    c.m_H = 1.67262192369e-27 + 9.1093837015e-31;
    c.gamma_e = 28.0249514242e9;
    c.gamma_p = 42.577478518e6;
    c.A_over_h = 1.420405751768e9;
    return c;
}

namespace units {

// lengths, in metres
inline constexpr double angstrom = 1e-10;
inline constexpr double picometre = 1e-12;
inline constexpr double nanometre = 1e-9;

// areas: user-facing densities and cross sections are cm based
inline constexpr double cm2_per_m2 = 1e4;    // multiply m^-2 by 1e-4 to get cm^-2
inline constexpr double m2_per_cm2 = 1e-4;

/// areal density conversion: sigma[m^-2] = sigma[cm^-2] * 1e4
inline constexpr double per_cm2_to_per_m2 = 1e4;

} // namespace units

} // namespace hshift
