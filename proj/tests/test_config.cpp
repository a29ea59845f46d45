#include <catch_amalgamated.hpp>

#include <string>

#include "hshift/config.hpp"

using namespace hshift;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

namespace {

RunConfig parsed(const std::string& text) {
    RunConfig cfg = parse_config(text);
    return cfg;
}

std::string error_of(const std::string& text) {
    try {
        RunConfig cfg = parse_config(text);
        validate(cfg);
    } catch (const config_error& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("defaults match the published operating point") {
    const RunConfig cfg;
    CHECK(cfg.field_B == 4.6);
    CHECK(cfg.sigma_bs == 1e12);

    CHECK(cfg.kinetics.wall_area_cm2 == 100.0);
    CHECK(cfg.kinetics.spot_area_cm2 == 0.32);
    CHECK(cfg.kinetics.G1 == 0.1);
    CHECK(cfg.kinetics.G1s == 0.1);
    CHECK(cfg.kinetics.G2 == 0.0);
    CHECK(cfg.kinetics.G2s == 1.4e-13);
    CHECK(cfg.kinetics.kab_prefactor == 2.8e-9);
    CHECK(cfg.kinetics.K_abs == 5e-11);
    CHECK(cfg.kinetics.E_a_K == 1.14);
    CHECK(cfg.kinetics.T_spot_K == 0.07);
    CHECK(cfg.kinetics.T_walls_K == 0.2);
    CHECK(cfg.kinetics.Phi_a == 0.0);

    CHECK(cfg.shift.a_t_m == 0.72e-10);
    CHECK_THAT(cfg.shift.a_t_m - cfg.shift.a_s_m, WithinRel(30e-12, 1e-12));
    CHECK(cfg.shift.l_m == 5e-10);
    CHECK(cfg.shift.Ut_Kcm2 == 5e-15);
    CHECK(cfg.shift.E_a_K == 1.14);
    CHECK(cfg.shift.g2 == 2.0);
    CHECK(cfg.shift.C0_hz == -24.79e3);
    CHECK(cfg.shift.C1_hz_cm2 == 1.52e-9);

    CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("empty document keeps the defaults") {
    RunConfig cfg = parsed("");
    apply_override(cfg, "command", "shift");
    CHECK(cfg.command == Command::shift);
    CHECK(cfg.field_B == 4.6);
    CHECK(cfg.shift.l_m == 5e-10);
    CHECK(cfg.kinetics.G2s == 1.4e-13);
}

TEST_CASE("document parsing") {
    SECTION("comments, blank lines, spacing, later lines win") {
        const RunConfig cfg = parsed(
            "# operating point\n"
            "\n"
            "field_B = 2.0 T   # tesla\n"
            "field_B=3.5\n"
            "  kinetics.G1s =   0.05\n");
        CHECK(cfg.field_B == 3.5);
        CHECK(cfg.kinetics.G1s == 0.05);
    }
    SECTION("missing equals sign reports the line number") {
        CHECK_THAT(error_of("field_B = 4\nkinetics.G1s 0.05\n"),
                   ContainsSubstring("line 2") && ContainsSubstring("key = value"));
    }
    SECTION("bad number reports key and line") {
        CHECK_THAT(error_of("kinetics.G1s = fast\n"),
                   ContainsSubstring("line 1") && ContainsSubstring("kinetics.G1s"));
    }
}

TEST_CASE("unit suffixes") {
    SECTION("lengths default to angstroms and accept pm, nm, m") {
        CHECK(parsed("shift.l = 5\n").shift.l_m == 5e-10);
        CHECK(parsed("shift.l = 0.5 nm\n").shift.l_m == 5e-10);
        CHECK(parsed("shift.a_t = 72 pm\n").shift.a_t_m == 7.2e-11);
        CHECK(parsed("shift.a_t = 0.72 A\n").shift.a_t_m == 7.2e-11);
        CHECK(parsed("shift.a_t = 0.72 angstrom\n").shift.a_t_m == 7.2e-11);
        CHECK(parsed("shift.l = 5e-10 m\n").shift.l_m == 5e-10);
    }
    SECTION("temperatures accept mK") {
        CHECK(parsed("kinetics.T_spot = 70 mK\n").kinetics.T_spot_K == 0.07);
        CHECK(parsed("kinetics.T_spot = 0.07 K\n").kinetics.T_spot_K == 0.07);
        CHECK(parsed("kinetics.E_a = 1.14 K\n").kinetics.E_a_K == 1.14);
    }
    SECTION("fields accept mT") {
        CHECK_THAT(parsed("field_B = 4600 mT\n").field_B, WithinRel(4.6, 1e-15));
    }
    SECTION("frequencies accept kHz and MHz") {
        CHECK(parsed("shift.C0 = -24.79 kHz\n").shift.C0_hz == -24.79e3);
        CHECK(parsed("shift.wall_shift_A0 = -0.049 MHz\n").shift.wall_shift_A0_hz == -49e3);
    }
    SECTION("areas and densities convert from SI") {
        CHECK(parsed("kinetics.wall_area = 0.01 m2\n").kinetics.wall_area_cm2 == 100.0);
        CHECK(parsed("sigma_bs = 1e16 m-2\n").sigma_bs == 1e12);
    }
    SECTION("times accept ms") {
        CHECK(parsed("t_end = 20 ms\n").t_end == 0.02);
    }
    SECTION("wrong unit for the dimension is rejected with the allowed list") {
        CHECK_THAT(error_of("shift.l = 5 K\n"),
                   ContainsSubstring("unknown unit") && ContainsSubstring("pm"));
        CHECK_THAT(error_of("shift.g2 = 2 K\n"), ContainsSubstring("bare number"));
    }
}

TEST_CASE("key resolution") {
    SECTION("unknown keys are rejected with a suggestion") {
        CHECK_THAT(error_of("G2ss = 1e-13\n"),
                   ContainsSubstring("unknown key") && ContainsSubstring("kinetics.G2s"));
        CHECK_THAT(error_of("kinetics.G2z = 1e-13\n"), ContainsSubstring("kinetics.G2"));
    }
    SECTION("unambiguous bare tails resolve") {
        CHECK(parsed("g2 = 1\n").shift.g2 == 1.0);
        CHECK(parsed("T_spot = 60 mK\n").kinetics.T_spot_K == 0.06);
        CHECK(parsed("G2s = bound\n").kinetics.G2s == 4e-13);
    }
    SECTION("ambiguous bare tails list the candidates") {
        const std::string err = error_of("E_a = 1.0\n");
        CHECK_THAT(err, ContainsSubstring("ambiguous"));
        CHECK_THAT(err, ContainsSubstring("kinetics.E_a"));
        CHECK_THAT(err, ContainsSubstring("shift.E_a"));
    }
}

TEST_CASE("named presets") {
    SECTION("G2s: theory and experimental bound") {
        CHECK(parsed("kinetics.G2s = theory\n").kinetics.G2s == 1.4e-13);
        CHECK(parsed("kinetics.G2s = bound\n").kinetics.G2s == 4e-13);
        CHECK(parsed("kinetics.G2s = 2e-13\n").kinetics.G2s == 2e-13);
    }
    SECTION("scattering difference: corrected follows a_t, williams is absolute") {
        const RunConfig cfg = parsed("shift.a_t = 0.80\nshift.scattering = corrected\n");
        CHECK_THAT(cfg.shift.a_s_m, WithinRel(0.80e-10 - 30e-12, 1e-12));
        CHECK(parsed("shift.scattering = williams\n").shift.a_s_m == 0.17e-10);
        CHECK_THAT(error_of("shift.scattering = folded\n"), ContainsSubstring("williams"));
    }
}

TEST_CASE("validation") {
    SECTION("g2 range") {
        CHECK_THAT(error_of("command = shift\ng2 = 3\n"),
                   ContainsSubstring("g2") && ContainsSubstring("[0, 2]"));
    }
    SECTION("temperature ordering") {
        CHECK_THAT(error_of("kinetics.T_spot = 0.3\n"), ContainsSubstring("warmer"));
    }
    SECTION("positivity") {
        CHECK_THAT(error_of("kinetics.spot_area = 0\n"), ContainsSubstring("areas"));
        CHECK_THAT(error_of("sigma_bs = 0\n"), ContainsSubstring("sigma_bs"));
        CHECK_THAT(error_of("tol = 0\n"), ContainsSubstring("tol"));
    }
    SECTION("negative rates") {
        CHECK_THAT(error_of("kinetics.G1 = -1\n"), ContainsSubstring("non-negative"));
    }
    SECTION("sweep requirements") {
        CHECK_THAT(error_of("command = sweep\n"), ContainsSubstring("sweep.variable"));
        CHECK_THAT(error_of("command = sweep\nsweep.variable = format\n"),
                   ContainsSubstring("not numeric"));
        CHECK_THAT(error_of("command = sweep\nsweep.variable = sigma_bs\n"),
                   ContainsSubstring("sweep.min"));
        CHECK_THAT(
            error_of("command = sweep\nsweep.variable = sigma_bs\nsweep.min = 1e12\nsweep.max = 1e11\n"),
            ContainsSubstring("min < "));
        CHECK_THAT(error_of("command = sweep\nsweep.variable = sigma_bs\nsweep.min = 1e11\n"
                            "sweep.max = 1e13\nsweep.points = 1\n"),
                   ContainsSubstring("[2, 1000000]"));
        CHECK_THAT(error_of("command = sweep\nsweep.variable = sigma_bs\nsweep.min = 1e11\n"
                            "sweep.max = 1e13\nsweep.points = 2000000\n"),
                   ContainsSubstring("[2, 1000000]"));
        CHECK_THAT(error_of("command = sweep\nsweep.variable = sigma_bs\nsweep.min = 0\n"
                            "sweep.max = 1e13\nsweep.scale = log\n"),
                   ContainsSubstring("log"));
    }
    SECTION("command and format words") {
        CHECK_THAT(error_of("command = lvls\n"), ContainsSubstring("unknown command"));
        CHECK_THAT(error_of("format = tsv\n"), ContainsSubstring("csv or kv"));
        RunConfig cfg = parsed("format = csv\n");
        CHECK(cfg.format == TableFormat::csv);
        CHECK(cfg.format_set);
    }
}

TEST_CASE("sweep grids") {
    SECTION("linear endpoints and count") {
        RunConfig cfg = parsed(
            "command = sweep\nsweep.variable = sigma_bs\nsweep.min = 1e11\nsweep.max = 1e13\n"
            "sweep.points = 5\n");
        validate(cfg);
        const auto g = sweep_grid(cfg);
        REQUIRE(g.size() == 5);
        CHECK(g.front() == 1e11);
        CHECK(g.back() == 1e13);
        CHECK_THAT(g[2], WithinRel(0.5 * (1e11 + 1e13), 1e-12));
    }
    SECTION("log spacing has a constant ratio") {
        RunConfig cfg = parsed(
            "command = sweep\nsweep.variable = sigma_bs\nsweep.min = 1e11\nsweep.max = 1e13\n"
            "sweep.points = 5\nsweep.scale = log\n");
        validate(cfg);
        const auto g = sweep_grid(cfg);
        REQUIRE(g.size() == 5);
        CHECK_THAT(g[1] / g[0], WithinRel(g[4] / g[3], 1e-9));
        CHECK_THAT(g.back(), WithinRel(1e13, 1e-9));
    }
    SECTION("bounds parse in the variable's unit") {
        RunConfig cfg = parsed(
            "command = sweep\nsweep.variable = shift.a_t\nsweep.min = 0.6\nsweep.max = 0.8\n"
            "sweep.points = 3\n");
        validate(cfg);
        const auto g = sweep_grid(cfg);
        CHECK_THAT(g.front(), WithinRel(0.6e-10, 1e-12));
        CHECK_THAT(g.back(), WithinRel(0.8e-10, 1e-12));
    }
}

TEST_CASE("override application order") {
    RunConfig cfg = parsed("field_B = 2.0\n");
    apply_override(cfg, "field_B", "7.0");
    CHECK(cfg.field_B == 7.0);
    apply_override(cfg, "shift.scattering", "williams");
    CHECK(cfg.shift.a_s_m == 0.17e-10);
    CHECK_THROWS_AS(apply_override(cfg, "nope", "1"), config_error);
}
