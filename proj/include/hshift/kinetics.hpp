#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hshift/errors.hpp"
#include "hshift/table.hpp"

namespace hshift {

// Surface kinetics of a-state atoms fed by b-state relaxation on the chamber
// walls and on a cold helium spot, and destroyed by a+b recombination.  All
// densities are per cm^2, rates per second, surface rate constants in
// cm^2 s^-1.  The "s" suffix marks the cold spot; bare names are the walls.

struct SurfaceDensities {
    double sigma_a = 0.0;   ///< a-state density on the walls, cm^-2
    double sigma_b = 0.0;   ///< b-state density on the walls, cm^-2
    double sigma_as = 0.0;  ///< a-state density on the spot, cm^-2
    double sigma_bs = 0.0;  ///< b-state density on the spot, cm^-2
};

struct KineticsParams {
    double wall_area_cm2 = 100.0;
    double spot_area_cm2 = 0.32;

    double G1 = 0.1;         ///< one-body b->a relaxation on the walls, s^-1
    double G1s = 0.1;        ///< one-body b->a relaxation on the spot, s^-1
    double G2 = 0.0;         ///< two-body b->a relaxation on the walls, cm^2 s^-1
    double G2s = 1.4e-13;    ///< two-body b->a relaxation on the spot, cm^2 s^-1

    double kab_prefactor = 2.8e-9;  ///< a+b recombination law K_ab = pref * T^1.5, cm^2 s^-1 K^-1.5
    double K_abs = 5e-11;           ///< measured a+b rate constant on the spot, cm^2 s^-1

    double E_a_K = 1.14;      ///< adsorption energy of H on the helium film, K
    double T_spot_K = 0.07;   ///< spot temperature
    double T_walls_K = 0.2;   ///< wall (and bulk gas) temperature

    double Phi_a = 0.0;       ///< optional external a-atom source, atoms/s
};

inline void validate(const KineticsParams& p) {
    auto pos = [](double v) { return std::isfinite(v) && v > 0.0; };
    auto nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
    if (!pos(p.wall_area_cm2) || !pos(p.spot_area_cm2))
        throw domain_error("kinetics: areas must be positive");
    if (!nonneg(p.G1) || !nonneg(p.G1s) || !nonneg(p.G2) || !nonneg(p.G2s) ||
        !nonneg(p.kab_prefactor) || !nonneg(p.K_abs) || !nonneg(p.Phi_a))
        throw domain_error("kinetics: rates and fluxes must be non-negative");
    if (!pos(p.E_a_K))
        throw domain_error("kinetics: adsorption energy must be positive");
    if (!pos(p.T_spot_K) || !pos(p.T_walls_K))
        throw domain_error("kinetics: temperatures must be positive");
    if (p.T_spot_K > p.T_walls_K)
        throw domain_error("kinetics: the spot must not be warmer than the walls");
}

/// Adsorption isotherm ratio sigma_spot / sigma_wall for one spin state:
/// exp(E_a (1/T_spot - 1/T_walls)).  Equals 1 for equal temperatures and
/// grows as the spot cools.
inline double adsorption_ratio(double E_a_K, double T_spot_K, double T_walls_K) {
    if (!(E_a_K > 0.0))
        throw domain_error("adsorption_ratio: adsorption energy must be positive");
    if (!(T_spot_K > 0.0) || !(T_walls_K > 0.0) || T_spot_K > T_walls_K)
        throw domain_error("adsorption_ratio: need 0 < T_spot <= T_walls");
    return std::exp(E_a_K * (1.0 / T_spot_K - 1.0 / T_walls_K));
}

inline double adsorption_ratio(const KineticsParams& p) {
    return adsorption_ratio(p.E_a_K, p.T_spot_K, p.T_walls_K);
}

/// Surface recombination rate constant K_ab = prefactor * T^(3/2), cm^2 s^-1.
inline double kab_rate(double prefactor, double T_K) {
    if (!(prefactor >= 0.0))
        throw domain_error("kab_rate: prefactor must be non-negative");
    if (!(T_K > 0.0))
        throw domain_error("kab_rate: temperature must be positive");
    return prefactor * T_K * std::sqrt(T_K);
}

/// T^(3/2)-law value of the spot rate constant, for comparison with the
/// measured K_abs carried in the parameters.
inline double kabs_from_law(const KineticsParams& p) {
    return kab_rate(p.kab_prefactor, p.T_spot_K);
}

/// Weight of the wall relaxation source relative to the spot one,
/// alpha = (A sigma_b) / (A_s sigma_bs).
inline double alpha_ratio(const KineticsParams& p, const SurfaceDensities& d) {
    validate(p);
    if (!(d.sigma_bs > 0.0))
        throw domain_error("alpha_ratio: spot b density must be positive");
    if (!(d.sigma_b >= 0.0))
        throw domain_error("alpha_ratio: wall b density must be non-negative");
    return (p.wall_area_cm2 * d.sigma_b) / (p.spot_area_cm2 * d.sigma_bs);
}

/// alpha when the wall and spot densities sit on the same isotherm.
inline double alpha_from_isotherm(const KineticsParams& p) {
    validate(p);
    return (p.wall_area_cm2 / p.spot_area_cm2) / adsorption_ratio(p);
}

/// Densities with the wall values slaved to the spot values through the
/// isotherm: sigma_bs / sigma_b = sigma_as / sigma_a = adsorption_ratio.
inline SurfaceDensities densities_from_spot(const KineticsParams& p, double sigma_as,
                                            double sigma_bs) {
    if (!(sigma_as >= 0.0) || !(sigma_bs >= 0.0))
        throw domain_error("densities_from_spot: densities must be non-negative");
    const double r = adsorption_ratio(p);
    return {sigma_as / r, sigma_bs / r, sigma_as, sigma_bs};
}

/// Net production rate of a atoms, atoms per second:
/// relaxation sources minus recombination sinks on both surfaces, plus any
/// external flux.
inline double na_rate(const KineticsParams& p, const SurfaceDensities& d) {
    validate(p);
    const double kab_wall = kab_rate(p.kab_prefactor, p.T_walls_K);
    const double spot = p.spot_area_cm2 *
        (p.G1s * d.sigma_bs + p.G2s * d.sigma_bs * d.sigma_bs - p.K_abs * d.sigma_as * d.sigma_bs);
    const double wall = p.wall_area_cm2 *
        (p.G1 * d.sigma_b + p.G2 * d.sigma_b * d.sigma_b - kab_wall * d.sigma_a * d.sigma_b);
    return spot + wall + p.Phi_a;
}

/// Closed-form steady-state spot density of a atoms,
///   sigma_as = (G1s + alpha G1) / K_abs + (G2s / K_abs) sigma_bs,
/// valid when spot recombination dominates the losses and there is no
/// external flux.  The intercept is the one-body part, the slope the
/// two-body part.
inline double steady_state_sigma_as(const KineticsParams& p, double sigma_bs) {
    validate(p);
    if (!(sigma_bs > 0.0))
        throw domain_error("steady_state_sigma_as: spot b density must be positive");
    if (!(p.K_abs > 0.0))
        throw domain_error("steady_state_sigma_as: K_abs must be positive");
    const double alpha = alpha_from_isotherm(p);
    return (p.G1s + alpha * p.G1) / p.K_abs + (p.G2s / p.K_abs) * sigma_bs;
}

/// Steady state found by bracketing the root of na_rate in sigma_as, with
/// the wall densities slaved to the spot through the isotherm.  Agrees with
/// the closed form to the size of the neglected wall-recombination term.
inline double steady_state_numeric(const KineticsParams& p, double sigma_bs) {
    validate(p);
    if (!(sigma_bs > 0.0))
        throw domain_error("steady_state_numeric: spot b density must be positive");

    auto f = [&](double sigma_as) {
        return na_rate(p, densities_from_spot(p, sigma_as, sigma_bs));
    };

    const double f0 = f(0.0);
    if (f0 == 0.0) return 0.0;
    if (f0 < 0.0)
        throw domain_error("steady_state_numeric: negative production at zero density");

    double hi = 1.0;
    if (p.K_abs > 0.0) hi = 2.0 * steady_state_sigma_as(p, sigma_bs) + 1.0;
    double fhi = f(hi);
    for (int i = 0; fhi > 0.0 && i < 200; ++i) {
        hi *= 2.0;
        fhi = f(hi);
    }
    if (fhi > 0.0)
        throw domain_error("steady_state_numeric: no steady state (losses never catch the sources)");

    // Illinois variant of false position
    double lo = 0.0, flo = f0;
    for (int it = 0; it < 200; ++it) {
        const double mid = (lo * fhi - hi * flo) / (fhi - flo);
        const double fm = f(mid);
        if (std::abs(hi - lo) <= 1e-14 * (std::abs(hi) + std::abs(lo)) || fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
            fhi *= 0.5;
        } else {
            hi = mid;
            fhi = fm;
            flo *= 0.5;
        }
    }
    return (lo * fhi - hi * flo) / (fhi - flo);
}

struct TrajectoryPoint {
    double t = 0.0;  ///< seconds
    SurfaceDensities densities;
};

/// Integrate the a-atom balance with sigma_bs held fixed by the b bath:
///   d sigma_as / dt = na_rate / A_eff,  A_eff = A_s + A / adsorption_ratio
/// (the wall population follows the spot adiabatically, so the wall area
/// enters with its isotherm weight).  Classic RK4 with step doubling; `tol`
/// is the per-step relative error target.  Wall densities in `initial` are
/// ignored and re-slaved to the spot values.
inline std::vector<TrajectoryPoint> integrate_kinetics(const KineticsParams& p,
                                                       const SurfaceDensities& initial,
                                                       double t_end, double tol) {
    validate(p);
    if (!(t_end > 0.0))
        throw domain_error("integrate_kinetics: end time must be positive");
    if (!(tol > 0.0) || !(tol < 1.0))
        throw domain_error("integrate_kinetics: tolerance must be in (0, 1)");
    if (!(initial.sigma_as >= 0.0) || !(initial.sigma_bs > 0.0))
        throw domain_error("integrate_kinetics: need sigma_as >= 0 and sigma_bs > 0");

    const double r = adsorption_ratio(p);
    const double area_eff = p.spot_area_cm2 + p.wall_area_cm2 / r;
    const double sigma_bs = initial.sigma_bs;

    auto rhs = [&](double sigma_as) {
        return na_rate(p, densities_from_spot(p, sigma_as, sigma_bs)) / area_eff;
    };
    auto rk4 = [&](double y, double h) {
        const double k1 = rhs(y);
        const double k2 = rhs(y + 0.5 * h * k1);
        const double k3 = rhs(y + 0.5 * h * k2);
        const double k4 = rhs(y + h * k3);
        return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };

    std::vector<TrajectoryPoint> traj;
    double t = 0.0;
    double y = initial.sigma_as;
    traj.push_back({t, densities_from_spot(p, y, sigma_bs)});

    double h = t_end / 64.0;
    const double h_min = t_end * 1e-14;
    size_t steps = 0;

    while (t < t_end) {
        if (h < h_min)
            throw domain_error("integrate_kinetics: step size underflow");
        if (++steps > 2'000'000)
            throw domain_error("integrate_kinetics: step budget exhausted");
        bool last = false;
        if (t + h >= t_end) {
            h = t_end - t;
            last = true;
        }

        const double full = rk4(y, h);
        const double half = rk4(rk4(y, 0.5 * h), 0.5 * h);
        const double err = std::abs(full - half) / 15.0;
        const double scale = tol * std::max({std::abs(y), std::abs(half), 1.0});

        if (err <= scale) {
            t = last ? t_end : t + h;
            y = std::max(0.0, half);  // clip rounding-level undershoot
            traj.push_back({t, densities_from_spot(p, y, sigma_bs)});
        }
        const double grow = err > 0.0 ? 0.9 * std::pow(scale / err, 0.2) : 5.0;
        h *= std::clamp(grow, 0.2, 5.0);
    }
    return traj;
}

/// CSV trajectory dump: header plus one row per point, nine significant
/// digits, LF line endings.
inline void write_trajectory_csv(std::ostream& os, std::span<const TrajectoryPoint> traj) {
    Table t;
    t.columns = {"time_s", "sigma_a", "sigma_b", "sigma_as", "sigma_bs"};
    for (const auto& pt : traj)
        t.add_row({pt.t, pt.densities.sigma_a, pt.densities.sigma_b, pt.densities.sigma_as,
                   pt.densities.sigma_bs});
    emit_table(os, t, TableFormat::csv);
}

} // namespace hshift
