#pragma once

#include <complex>
#include <string>
#include <vector>

#include "hshift/config.hpp"
#include "hshift/constants.hpp"
#include "hshift/hyperfine.hpp"
#include "hshift/kinetics.hpp"
#include "hshift/pair_spin.hpp"
#include "hshift/shift.hpp"
#include "hshift/table.hpp"

namespace hshift {

namespace detail_commands {

inline TableFormat effective_format(const RunConfig& cfg, TableFormat command_default) {
    return cfg.format_set ? cfg.format : command_default;
}

inline std::string run_levels(const RunConfig& cfg) {
    const PhysicalConstants c = default_constants();

    std::vector<double> grid;
    if (!cfg.sweep.variable.empty()) {
        if (cfg.sweep.variable != "field_B")
            throw config_error("levels: only field_B can be swept here");
        grid = sweep_grid(cfg);
    } else {
        for (int i = 0; i <= 20; ++i) grid.push_back(0.5 * i);
    }

    Table t;
    t.columns = {"B_T", "theta_rad", "E_a_hz", "E_b_hz", "E_c_hz", "E_d_hz", "nu_ab_hz", "nu_bc_hz"};
    for (double B : grid) {
        const HyperfineSpectrum s = eigensystem(c, B);
        t.add_row({B, s.theta, s.energy(StateLabel::a), s.energy(StateLabel::b),
                   s.energy(StateLabel::c), s.energy(StateLabel::d),
                   transition_frequency(s, StateLabel::a, StateLabel::b),
                   transition_frequency(s, StateLabel::b, StateLabel::c)});
    }
    return emit_table(t, effective_format(cfg, TableFormat::csv));
}

inline std::string run_pair_check(const RunConfig& cfg) {
    const PhysicalConstants c = default_constants();
    const HyperfineSpectrum s = eigensystem(c, cfg.field_B);

    const PairState bb = pair_basis_state(s, StateLabel::b, StateLabel::b);
    const PairState bc = symmetrized_pair_state(s, StateLabel::b, StateLabel::c);
    const PairState ab = symmetrized_pair_state(s, StateLabel::a, StateLabel::b);

    Table t;
    t.columns = {"drive", "coupling_bb_bc", "coupling_bb_ab", "driven_norm",
                 "singlet_projection_norm", "odd_f_projection_norm", "swap_antisym_norm"};
    for (Drive d : {Drive::electron, Drive::nuclear}) {
        const ForbiddennessReport r = forbiddenness_check(s, d);
        t.add_row({std::string(d == Drive::electron ? "electron" : "nuclear"),
                   std::abs(drive_coupling(bb, bc, d)), std::abs(drive_coupling(bb, ab, d)),
                   r.driven_norm, r.singlet_projection_norm, r.odd_f_projection_norm,
                   r.swap_antisymmetric_norm});
    }
    return emit_table(t, effective_format(cfg, TableFormat::csv));
}

inline std::string run_kinetics(const RunConfig& cfg) {
    const KineticsParams& p = cfg.kinetics;

    if (cfg.t_end > 0.0) {
        SurfaceDensities init = densities_from_spot(p, cfg.sigma_as0, cfg.sigma_bs);
        const auto traj = integrate_kinetics(p, init, cfg.t_end, cfg.tol);
        std::ostringstream os;
        write_trajectory_csv(os, traj);  // trajectories are CSV by definition
        return os.str();
    }

    const double r = adsorption_ratio(p);
    const double alpha = alpha_from_isotherm(p);
    const double closed = steady_state_sigma_as(p, cfg.sigma_bs);
    const double numeric = steady_state_numeric(p, cfg.sigma_bs);
    const double kab_wall = kab_rate(p.kab_prefactor, p.T_walls_K);
    const double area_eff = p.spot_area_cm2 + p.wall_area_cm2 / r;
    // linearised decay rate of sigma_as about the steady state
    const double loss = p.spot_area_cm2 * p.K_abs * cfg.sigma_bs +
                        p.wall_area_cm2 * kab_wall * cfg.sigma_bs / (r * r);

    Table t;
    t.columns = {"adsorption_ratio", "alpha", "K_abs", "K_abs_law", "kab_wall",
                 "steady_intercept", "steady_slope", "sigma_as_closed", "sigma_as_numeric",
                 "sigma_a_wall", "area_eff_cm2", "relaxation_time_s"};
    t.add_row({r, alpha, p.K_abs, kabs_from_law(p), kab_wall,
               p.K_abs > 0.0 ? (p.G1s + alpha * p.G1) / p.K_abs : 0.0,
               p.K_abs > 0.0 ? p.G2s / p.K_abs : 0.0, closed, numeric, numeric / r, area_eff,
               loss > 0.0 ? area_eff / loss : 0.0});
    return emit_table(t, effective_format(cfg, TableFormat::kv));
}

inline Table breakdown_table(const ShiftBreakdown& b) {
    Table t;
    t.columns = {"pressure_slope_hz_cm2", "wall_slope_hz_cm2", "total_slope_hz_cm2",
                 "wall_offset_hz", "ratio_to_C1"};
    t.add_row({b.pressure_term_slope, b.wall_term_slope, b.total_slope, b.wall_offset_from_a,
               b.ratio_to_experiment});
    return t;
}

inline std::string run_shift(const RunConfig& cfg) {
    const PhysicalConstants c = default_constants();
    const ShiftBreakdown b = ab_shift(cfg.shift, c, cfg.kinetics, cfg.sigma_bs);
    return emit_table(breakdown_table(b), effective_format(cfg, TableFormat::kv));
}

inline std::string run_sweep(const RunConfig& cfg) {
    const PhysicalConstants c = default_constants();
    const auto& key = detail_config::resolve_key(cfg.sweep.variable);
    const std::vector<double> grid = sweep_grid(cfg);

    Table t;
    t.columns = {"value", "sigma_as", "delta_nu_bc_hz", "pressure_slope_hz_cm2",
                 "wall_slope_hz_cm2", "total_slope_hz_cm2", "wall_offset_hz", "ratio_to_C1"};
    for (double v : grid) {
        RunConfig point = cfg;
        key.set_value(point, v);
        try {
            validate(point.kinetics);
            validate(point.shift);
        } catch (const domain_error& e) {
            throw config_error("sweep: " + std::string(e.what()) + " at " +
                               cfg.sweep.variable + " = " + format_g9(v));
        }
        const double swept_sigma_bs = point.sigma_bs;
        const double sigma_as = steady_state_numeric(point.kinetics, swept_sigma_bs);
        const ShiftBreakdown b = ab_shift(point.shift, c, point.kinetics, swept_sigma_bs);
        t.add_row({v, sigma_as, contact_shift_bc(point.shift, c, sigma_as), b.pressure_term_slope,
                   b.wall_term_slope, b.total_slope, b.wall_offset_from_a, b.ratio_to_experiment});
    }
    return emit_table(t, effective_format(cfg, TableFormat::csv));
}

inline std::string run_compare(const RunConfig& cfg) {
    const PhysicalConstants c = default_constants();
    const ExperimentReference ref = experiment_reference();
    const ShiftBreakdown b = ab_shift(cfg.shift, c, cfg.kinetics, cfg.sigma_bs);
    const TripletVertex vertex = triplet_vertex(cfg.shift, c);

    // the offset recomputed for the uncorrected (doubled) scattering difference
    ShiftParams raw = cfg.shift;
    raw.a_s_m = raw.a_t_m - 2.0 * (raw.a_t_m - raw.a_s_m);
    const double offset_raw = wall_offset_from_a(raw, c, cfg.kinetics);

    KineticsParams he3 = cfg.kinetics;
    he3.E_a_K = ref.E_a_3He_K.value;

    Table t;
    t.columns = {"field_B",
                 "C0_hz",
                 "C1_hz_cm2",
                 "total_slope_hz_cm2",
                 "ratio_to_C1",
                 "pressure_slope_hz_cm2",
                 "wall_slope_hz_cm2",
                 "bc_slope_hz_cm2",
                 "wall_offset_hz",
                 "wall_offset_raw_difference_hz",
                 "wall_shift_A0_hz",
                 "wall_shift_A0_reference_hz",
                 "adsorption_ratio",
                 "adsorption_ratio_3He",
                 "vertex_formula_Kcm2",
                 "vertex_effective_Kcm2",
                 "wall_response_coeff_cm2",
                 "K_abs",
                 "K_abs_law",
                 "steady_slope"};
    t.add_row({cfg.field_B,
               cfg.shift.C0_hz,
               cfg.shift.C1_hz_cm2,
               b.total_slope,
               b.ratio_to_experiment,
               b.pressure_term_slope,
               b.wall_term_slope,
               bc_shift_slope(cfg.shift, c, cfg.kinetics),
               b.wall_offset_from_a,
               offset_raw,
               wall_shift_A0(cfg.shift, c),
               ref.wall_shift_4He_hz.value,
               adsorption_ratio(cfg.kinetics),
               adsorption_ratio(he3),
               vertex.formula_Kcm2,
               vertex.effective_Kcm2,
               -cfg.shift.g2 * cfg.shift.Ut_Kcm2 / cfg.shift.E_a_K,
               cfg.kinetics.K_abs,
               kabs_from_law(cfg.kinetics),
               cfg.kinetics.K_abs > 0.0 ? cfg.kinetics.G2s / cfg.kinetics.K_abs : 0.0});
    return emit_table(t, effective_format(cfg, TableFormat::kv));
}

} // namespace detail_commands

/// Execute one command against a validated configuration and return the
/// full output document (CSV or key=value, LF line endings).
inline std::string run_command(const RunConfig& cfg) {
    validate(cfg);
    switch (cfg.command) {
        case Command::levels: return detail_commands::run_levels(cfg);
        case Command::pair_check: return detail_commands::run_pair_check(cfg);
        case Command::kinetics: return detail_commands::run_kinetics(cfg);
        case Command::shift: return detail_commands::run_shift(cfg);
        case Command::sweep: return detail_commands::run_sweep(cfg);
        case Command::compare: return detail_commands::run_compare(cfg);
    }
    throw domain_error("run_command: unknown command");
}

} // namespace hshift
