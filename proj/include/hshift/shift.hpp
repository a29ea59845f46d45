#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hshift/constants.hpp"
#include "hshift/errors.hpp"
#include "hshift/kinetics.hpp"

namespace hshift {

// Cold-collision frequency shifts of adsorbed hydrogen and their imprint on
// the a-b transition: a pressure-like term from the a-state population built
// up on the cold spot, and a wall-shift term from the compression-induced
// change of the adsorption energy.  User-facing densities are per cm^2 and
// slopes are Hz cm^2; lengths inside ShiftParams are metres.

/// Value with a one-sigma uncertainty, propagated linearly.
struct Uncertain {
    double value = 0.0;
    double sigma = 0.0;

    Uncertain scaled(double k) const { return {k * value, std::abs(k) * sigma}; }
};

/// Quantum statistics of the colliding pair, which sets the pair-correlation
/// factor g2 multiplying all mean-field shifts.
enum class Statistics { distinguishable, condensate, thermal_bosons, fermions };

inline double g2_factor(Statistics s) {
    switch (s) {
        case Statistics::distinguishable: return 1.0;
        case Statistics::condensate: return 1.0;
        case Statistics::thermal_bosons: return 2.0;
        case Statistics::fermions: return 0.0;
    }
    throw domain_error("g2_factor: unknown statistics tag");
}

/// Convention under which a triplet-singlet scattering-length difference was
/// reported.  Values quoted for distinguishable atoms (g2 = 1) must be
/// halved before use in a thermal identical-boson gas (g2 = 2).
enum class ScatteringConvention { distinguishable_g2_1, identical_g2_2 };

inline double corrected_scattering_difference(double reported, ScatteringConvention conv) {
    return conv == ScatteringConvention::distinguishable_g2_1 ? 0.5 * reported : reported;
}

inline Uncertain corrected_scattering_difference(Uncertain reported, ScatteringConvention conv) {
    return conv == ScatteringConvention::distinguishable_g2_1 ? reported.scaled(0.5) : reported;
}

struct ShiftParams {
    double a_t_m = 0.72e-10;        ///< triplet scattering length of surface H
    double a_s_m = 0.42e-10;        ///< singlet scattering length (a_t - 30 pm)
    double l_m = 5e-10;             ///< thickness of the adsorbed-state wavefunction

    double Ut_Kcm2 = 5e-15;         ///< effective triplet vertex, K cm^2
    double E_a_K = 1.14;            ///< adsorption energy entering the wall-shift response
    double g2 = 2.0;                ///< pair correlation factor of the adsorbed gas

    /// zero-density wall shift of the hyperfine constant, (Delta A_w)/h in Hz;
    /// NaN means "derive from C0"
    double wall_shift_A0_hz = std::numeric_limits<double>::quiet_NaN();

    double C0_hz = -24.79e3;        ///< measured a-b offset at zero density
    double C1_hz_cm2 = 1.52e-9;     ///< measured a-b slope versus sigma_bs
};

inline void validate(const ShiftParams& p) {
    auto fin = [](double v) { return std::isfinite(v); };
    if (!fin(p.a_t_m) || !fin(p.a_s_m))
        throw domain_error("shift: scattering lengths must be finite");
    if (!(p.l_m > 0.0))
        throw domain_error("shift: wavefunction thickness must be positive");
    if (!(p.E_a_K > 0.0))
        throw domain_error("shift: adsorption energy must be positive");
    if (!(p.g2 >= 0.0) || !(p.g2 <= 2.0))
        throw domain_error("shift: g2 must lie in [0, 2]");
    if (!fin(p.C0_hz) || !(p.C1_hz_cm2 > 0.0))
        throw domain_error("shift: reference coefficients out of range");
}

/// Reference numbers from the 4.6 T cold-spot experiment, used for
/// cross-checks and ratios.
struct ExperimentReference {
    Uncertain C0_hz{-24.79e3, 0.02e3};
    Uncertain C1_hz_cm2{1.52e-9, 0.15e-9};
    double field_B = 4.6;
    Uncertain E_a_4He_K{1.14, 0.01};
    Uncertain E_a_3He_K{0.40, 0.01};
    Uncertain wall_shift_4He_hz{-49e3, 2e3};   ///< zero-field (Delta A_w)/h on 4He
    Uncertain wall_shift_3He_hz{-23e3, 2e3};   ///< same on 3He
    double ea_reduction_3He = 0.10;            ///< observed relative E_a drop, 3He scenario
    double wall_reduction_3He = 0.06;          ///< observed relative wall-shift drop
    double G2s_upper_bound = 4e-13;            ///< experimental bound on G2s, cm^2 s^-1
};

inline ExperimentReference experiment_reference() { return {}; }

/// (hbar / (m l)) (a_s - a_t) in Hz per m^-2: the slope of the adsorbed-gas
/// b-c contact shift versus the a-state density.
inline double contact_shift_slope_si(const ShiftParams& p, const PhysicalConstants& c) {
    validate(p);
    return c.hbar / (c.m_H * p.l_m) * (p.a_s_m - p.a_t_m);
}

/// b-c contact shift of the adsorbed gas for a given a density, Hz.
/// Linear in sigma_as and negative for a_s < a_t.
inline double contact_shift_bc(const ShiftParams& p, const PhysicalConstants& c,
                               double sigma_as_cm2) {
    if (!(sigma_as_cm2 >= 0.0))
        throw domain_error("contact_shift_bc: density must be non-negative");
    return contact_shift_slope_si(p, c) * sigma_as_cm2 * units::per_cm2_to_per_m2;
}

/// Slope of the spot b-c shift versus the bath density sigma_bs, Hz cm^2.
/// The steady state ties sigma_as to sigma_bs with slope G2s / K_abs.
inline double bc_shift_slope(const ShiftParams& p, const PhysicalConstants& c,
                             const KineticsParams& k) {
    validate(p);
    validate(k);
    if (!(k.K_abs > 0.0))
        throw domain_error("bc_shift_slope: K_abs must be positive");
    return contact_shift_slope_si(p, c) * units::per_cm2_to_per_m2 * (k.G2s / k.K_abs);
}

/// Density-independent pressure-shift offset of the a-b transition, Hz:
///   (gamma_p / gamma_e) (2 hbar / (m l)) (a_s - a_t) (G1s / K_abs).
/// The one-body part of the steady state feeds a fixed a population, whose
/// contact shift leaks into a-b with the nuclear-to-electron weight.
inline double wall_offset_from_a(const ShiftParams& p, const PhysicalConstants& c,
                                 const KineticsParams& k) {
    validate(p);
    validate(k);
    if (!(k.K_abs > 0.0))
        throw domain_error("wall_offset_from_a: K_abs must be positive");
    const double intercept_m2 = (k.G1s / k.K_abs) * units::per_cm2_to_per_m2;
    return c.gyromagnetic_ratio() * 2.0 * c.hbar / (c.m_H * p.l_m) * (p.a_s_m - p.a_t_m) *
           intercept_m2;
}

/// Triplet mean-field vertex 4 pi hbar^2 a_t / (m l), in K cm^2, plus the
/// configured effective value actually used by the energy shifts.
struct TripletVertex {
    double formula_Kcm2 = 0.0;
    double effective_Kcm2 = 0.0;
};

inline TripletVertex triplet_vertex(const ShiftParams& p, const PhysicalConstants& c) {
    validate(p);
    TripletVertex v;
    v.formula_Kcm2 = 4.0 * std::numbers::pi * c.hbar * c.hbar * p.a_t_m /
                     (c.m_H * p.l_m * c.k_B) * units::cm2_per_m2;
    v.effective_Kcm2 = p.Ut_Kcm2;
    return v;
}

/// Mean-field interaction energy of an adsorbed atom with the b gas,
/// delta E = -g2 sigma_b Ut, in kelvin.  This is the compression-induced
/// reduction of the adsorption energy.
inline double interaction_energy(const ShiftParams& p, double sigma_b_cm2) {
    validate(p);
    if (!(sigma_b_cm2 >= 0.0))
        throw domain_error("interaction_energy: density must be non-negative");
    return -p.g2 * sigma_b_cm2 * p.Ut_Kcm2;
}

/// Relative change of the wall shift with density,
///   delta(Delta A_w) / Delta A_w = -g2 sigma_b Ut / E_a,
/// i.e. the wall shift scales with the adsorption energy.
inline double wall_shift_relative_change(const ShiftParams& p, double sigma_b_cm2) {
    return interaction_energy(p, sigma_b_cm2) / p.E_a_K;
}

/// Zero-density wall shift (Delta A_w)/h in Hz: the configured override, or
/// 2 C0 / (1 + gamma_p/gamma_e) when none is set (the a-b offset is the wall
/// shift weighted by (1 + gamma_p/gamma_e)/2).
inline double wall_shift_A0(const ShiftParams& p, const PhysicalConstants& c) {
    validate(p);
    if (std::isfinite(p.wall_shift_A0_hz)) return p.wall_shift_A0_hz;
    return 2.0 * p.C0_hz / (1.0 + c.gyromagnetic_ratio());
}

/// Decomposition of the a-b shift versus the bath density sigma_bs.
/// Field names match the serialised output of the CLI.
struct ShiftBreakdown {
    double pressure_term_slope = 0.0;   ///< Hz cm^2, from the a-population contact shift
    double wall_term_slope = 0.0;       ///< Hz cm^2, from the wall-shift compression response
    double total_slope = 0.0;           ///< Hz cm^2, sum of the two
    double wall_offset_from_a = 0.0;    ///< Hz, density-independent pressure offset
    double ratio_to_experiment = 0.0;   ///< total_slope / C1
};

/// Compose the a-b density shift at a given bath density.  Both slopes are
/// against sigma_bs; the total is their exact sum and the ratio compares it
/// with the measured C1.
inline ShiftBreakdown ab_shift(const ShiftParams& p, const PhysicalConstants& c,
                               const KineticsParams& k, double sigma_bs_cm2) {
    validate(p);
    if (!(sigma_bs_cm2 >= 0.0))
        throw domain_error("ab_shift: density must be non-negative");

    ShiftBreakdown b;
    b.pressure_term_slope = -c.gyromagnetic_ratio() * bc_shift_slope(p, c, k);
    b.wall_term_slope = p.C0_hz * (-p.g2 * p.Ut_Kcm2 / p.E_a_K);
    b.total_slope = b.pressure_term_slope + b.wall_term_slope;
    b.wall_offset_from_a = wall_offset_from_a(p, c, k);
    b.ratio_to_experiment = b.total_slope / p.C1_hz_cm2;
    return b;
}

} // namespace hshift
