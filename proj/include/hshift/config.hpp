#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hshift/errors.hpp"
#include "hshift/kinetics.hpp"
#include "hshift/shift.hpp"
#include "hshift/table.hpp"

namespace hshift {

enum class Command { levels, pair_check, kinetics, shift, sweep, compare };
enum class SweepScale { linear, log };

struct SweepSpec {
    std::string variable;   ///< canonical key name of the swept quantity
    std::string min;        ///< raw value, parsed with the variable's unit
    std::string max;
    long points = 50;
    SweepScale scale = SweepScale::linear;
};

/// Everything a single CLI invocation needs.  Built from defaults, then a
/// config file, then --set overrides, in that order; later settings win.
struct RunConfig {
    Command command = Command::compare;
    bool command_set = false;

    double field_B = 4.6;           ///< tesla

    KineticsParams kinetics;
    ShiftParams shift;
    SweepSpec sweep;

    double sigma_bs = 1e12;         ///< bath density for kinetics/shift output, cm^-2
    double sigma_as0 = 0.0;         ///< initial spot a density for trajectories, cm^-2
    double t_end = 0.0;             ///< trajectory length, s; 0 = steady-state summary only
    double tol = 1e-8;              ///< integrator relative tolerance

    std::string out;                ///< output path; empty = stdout
    TableFormat format = TableFormat::kv;
    bool format_set = false;        ///< false = per-command default
};

namespace detail_config {

inline std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (size_t j = 1; j <= b.size(); ++j) {
            const size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

/// Dimension of a numeric key; fixes both the SI-or-user target unit and the
/// accepted suffixes.  A bare number is read in the customary unit of the
/// quantity (the `bare` scale).
enum class Dim { length, temperature, field, area, density, rate1, rate2, vertex, frequency, freq_area, time, number };

struct UnitEntry {
    const char* suffix;
    double scale;
};

/// scale = multiplier taking "value in this unit" to the stored unit
/// (metres for lengths, otherwise the customary unit itself).
inline const std::vector<UnitEntry>& unit_table(Dim d) {
    static const std::vector<UnitEntry> length = {{"A", 1e-10}, {"angstrom", 1e-10},
                                                  {"pm", 1e-12}, {"nm", 1e-9}, {"m", 1.0}};
    static const std::vector<UnitEntry> temperature = {{"K", 1.0}, {"mK", 1e-3}};
    static const std::vector<UnitEntry> field = {{"T", 1.0}, {"mT", 1e-3}};
    static const std::vector<UnitEntry> area = {{"cm2", 1.0}, {"m2", 1e4}};
    static const std::vector<UnitEntry> density = {{"cm-2", 1.0}, {"m-2", 1e-4}};
    static const std::vector<UnitEntry> rate1 = {{"s-1", 1.0}};
    static const std::vector<UnitEntry> rate2 = {{"cm2/s", 1.0}};
    static const std::vector<UnitEntry> vertex = {{"Kcm2", 1.0}};
    static const std::vector<UnitEntry> frequency = {{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}};
    static const std::vector<UnitEntry> freq_area = {{"Hzcm2", 1.0}};
    static const std::vector<UnitEntry> time = {{"s", 1.0}, {"ms", 1e-3}};
    static const std::vector<UnitEntry> none = {};
    switch (d) {
        case Dim::length: return length;
        case Dim::temperature: return temperature;
        case Dim::field: return field;
        case Dim::area: return area;
        case Dim::density: return density;
        case Dim::rate1: return rate1;
        case Dim::rate2: return rate2;
        case Dim::vertex: return vertex;
        case Dim::frequency: return frequency;
        case Dim::freq_area: return freq_area;
        case Dim::time: return time;
        case Dim::number: return none;
    }
    return none;
}

inline double bare_scale(Dim d) {
    // customary units: lengths are quoted in angstroms, everything else in
    // its stored unit already
    return d == Dim::length ? 1e-10 : 1.0;
}

inline double parse_number(const std::string& key, const std::string& value, Dim d) {
    const std::string v = trim(value);
    if (v.empty())
        throw config_error(key + ": empty value");
    const char* begin = v.c_str();
    char* end = nullptr;
    const double x = std::strtod(begin, &end);
    if (end == begin)
        throw config_error(key + ": '" + v + "' is not a number");
    const std::string suffix = trim(std::string(end));
    if (suffix.empty())
        return x * bare_scale(d);
    for (const auto& u : unit_table(d))
        if (suffix == u.suffix)
            return x * u.scale;
    std::string allowed;
    for (const auto& u : unit_table(d)) allowed += std::string(allowed.empty() ? "" : ", ") + u.suffix;
    throw config_error(key + ": unknown unit '" + suffix + "'" +
                       (allowed.empty() ? " (this key takes a bare number)"
                                        : " (allowed: " + allowed + ")"));
}

inline long parse_integer(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    const char* begin = v.c_str();
    char* end = nullptr;
    const long x = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw config_error(key + ": '" + v + "' is not an integer");
    return x;
}

struct KeyInfo {
    std::string name;                                        ///< canonical dotted name
    bool numeric;                                            ///< eligible as a sweep variable
    Dim dim = Dim::number;                                   ///< meaningful when numeric
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<double(const RunConfig&)> get;             ///< null for non-numeric keys
    std::function<void(RunConfig&, double)> set_value;       ///< stored-unit setter, numeric only
};

inline Command parse_command_word(const std::string& w) {
    if (w == "levels") return Command::levels;
    if (w == "pair-check") return Command::pair_check;
    if (w == "kinetics") return Command::kinetics;
    if (w == "shift") return Command::shift;
    if (w == "sweep") return Command::sweep;
    if (w == "compare") return Command::compare;
    throw config_error("unknown command '" + w +
                       "' (expected levels, pair-check, kinetics, shift, sweep or compare)");
}

inline const std::vector<KeyInfo>& key_registry() {
    static const std::vector<KeyInfo> keys = [] {
        std::vector<KeyInfo> k;
        auto word = [&](std::string name, std::function<void(RunConfig&, const std::string&)> set) {
            KeyInfo ki;
            ki.name = std::move(name);
            ki.numeric = false;
            ki.set = std::move(set);
            k.push_back(std::move(ki));
        };
        auto num_at = [&](std::string name, Dim d, auto locate) {
            KeyInfo ki;
            ki.name = name;
            ki.numeric = true;
            ki.dim = d;
            ki.set = [locate, d, name](RunConfig& c, const std::string& v) {
                locate(c) = parse_number(name, v, d);
            };
            ki.get = [locate](const RunConfig& c) { return locate(const_cast<RunConfig&>(c)); };
            ki.set_value = [locate](RunConfig& c, double v) { locate(c) = v; };
            k.push_back(std::move(ki));
        };
        auto num = [&](std::string name, Dim d, double RunConfig::* member) {
            num_at(name, d, [member](RunConfig& c) -> double& { return c.*member; });
        };
        auto num_kin = [&](std::string name, Dim d, double KineticsParams::* member) {
            num_at(name, d, [member](RunConfig& c) -> double& { return c.kinetics.*member; });
        };
        auto num_shift = [&](std::string name, Dim d, double ShiftParams::* member) {
            num_at(name, d, [member](RunConfig& c) -> double& { return c.shift.*member; });
        };

        word("command", [](RunConfig& c, const std::string& v) {
            c.command = parse_command_word(trim(v));
            c.command_set = true;
        });
        word("out", [](RunConfig& c, const std::string& v) { c.out = trim(v); });
        word("format", [](RunConfig& c, const std::string& v) {
            const std::string w = trim(v);
            if (w == "csv") c.format = TableFormat::csv;
            else if (w == "kv") c.format = TableFormat::kv;
            else throw config_error("format: expected csv or kv, got '" + w + "'");
            c.format_set = true;
        });

        num("field_B", Dim::field, &RunConfig::field_B);
        num("sigma_bs", Dim::density, &RunConfig::sigma_bs);
        num("sigma_as0", Dim::density, &RunConfig::sigma_as0);
        num("t_end", Dim::time, &RunConfig::t_end);
        num("tol", Dim::number, &RunConfig::tol);

        num_kin("kinetics.wall_area", Dim::area, &KineticsParams::wall_area_cm2);
        num_kin("kinetics.spot_area", Dim::area, &KineticsParams::spot_area_cm2);
        num_kin("kinetics.G1", Dim::rate1, &KineticsParams::G1);
        num_kin("kinetics.G1s", Dim::rate1, &KineticsParams::G1s);
        num_kin("kinetics.G2", Dim::rate2, &KineticsParams::G2);
        num_kin("kinetics.kab_prefactor", Dim::rate2, &KineticsParams::kab_prefactor);
        num_kin("kinetics.K_abs", Dim::rate2, &KineticsParams::K_abs);
        num_kin("kinetics.E_a", Dim::temperature, &KineticsParams::E_a_K);
        num_kin("kinetics.T_spot", Dim::temperature, &KineticsParams::T_spot_K);
        num_kin("kinetics.T_walls", Dim::temperature, &KineticsParams::T_walls_K);
        num_kin("kinetics.Phi_a", Dim::rate1, &KineticsParams::Phi_a);

        // G2s also understands two named presets
        {
            KeyInfo ki;
            ki.name = "kinetics.G2s";
            ki.numeric = true;
            ki.dim = Dim::rate2;
            ki.set = [](RunConfig& c, const std::string& v) {
                const std::string w = trim(v);
                if (w == "theory") c.kinetics.G2s = 1.4e-13;
                else if (w == "bound") c.kinetics.G2s = experiment_reference().G2s_upper_bound;
                else c.kinetics.G2s = parse_number("kinetics.G2s", v, Dim::rate2);
            };
            ki.get = [](const RunConfig& c) { return c.kinetics.G2s; };
            ki.set_value = [](RunConfig& c, double v) { c.kinetics.G2s = v; };
            k.push_back(std::move(ki));
        }

        num_shift("shift.a_t", Dim::length, &ShiftParams::a_t_m);
        num_shift("shift.a_s", Dim::length, &ShiftParams::a_s_m);
        num_shift("shift.l", Dim::length, &ShiftParams::l_m);
        num_shift("shift.Ut", Dim::vertex, &ShiftParams::Ut_Kcm2);
        num_shift("shift.E_a", Dim::temperature, &ShiftParams::E_a_K);
        num_shift("shift.g2", Dim::number, &ShiftParams::g2);
        num_shift("shift.wall_shift_A0", Dim::frequency, &ShiftParams::wall_shift_A0_hz);
        num_shift("shift.C0", Dim::frequency, &ShiftParams::C0_hz);
        num_shift("shift.C1", Dim::freq_area, &ShiftParams::C1_hz_cm2);

        // scattering-length presets: corrected = a_t - 30 pm, williams = 0.17 A
        word("shift.scattering", [](RunConfig& c, const std::string& v) {
            const std::string w = trim(v);
            if (w == "corrected") c.shift.a_s_m = c.shift.a_t_m - 30e-12;
            else if (w == "williams") c.shift.a_s_m = 0.17e-10;
            else throw config_error("shift.scattering: expected corrected or williams, got '" + w +
                                    "'");
        });

        word("sweep.variable",
             [](RunConfig& c, const std::string& v) { c.sweep.variable = trim(v); });
        word("sweep.min", [](RunConfig& c, const std::string& v) { c.sweep.min = trim(v); });
        word("sweep.max", [](RunConfig& c, const std::string& v) { c.sweep.max = trim(v); });
        word("sweep.points", [](RunConfig& c, const std::string& v) {
            c.sweep.points = parse_integer("sweep.points", v);
        });
        word("sweep.scale", [](RunConfig& c, const std::string& v) {
            const std::string w = trim(v);
            if (w == "linear") c.sweep.scale = SweepScale::linear;
            else if (w == "log") c.sweep.scale = SweepScale::log;
            else throw config_error("sweep.scale: expected linear or log, got '" + w + "'");
        });
        return k;
    }();
    return keys;
}

inline std::string tail_of(const std::string& name) {
    const size_t dot = name.rfind('.');
    return dot == std::string::npos ? name : name.substr(dot + 1);
}

/// Resolve a user-supplied key: exact canonical match, else an unambiguous
/// bare tail (g2 for shift.g2), else an error carrying the closest match.
inline const KeyInfo& resolve_key(const std::string& key) {
    const auto& keys = key_registry();
    for (const auto& k : keys)
        if (k.name == key) return k;

    if (key.find('.') == std::string::npos) {
        std::vector<const KeyInfo*> hits;
        for (const auto& k : keys)
            if (tail_of(k.name) == key) hits.push_back(&k);
        if (hits.size() == 1) return *hits.front();
        if (hits.size() > 1) {
            std::string all;
            for (const auto* k : hits) all += std::string(all.empty() ? "" : ", ") + k->name;
            throw config_error("key '" + key + "' is ambiguous (matches " + all + ")");
        }
    }

    const KeyInfo* best = nullptr;
    size_t best_d = std::string::npos;
    for (const auto& k : keys) {
        const size_t d = std::min(edit_distance(key, k.name), edit_distance(key, tail_of(k.name)));
        if (d < best_d) {
            best_d = d;
            best = &k;
        }
    }
    std::string msg = "unknown key '" + key + "'";
    if (best && best_d <= 3) msg += " (did you mean '" + best->name + "'?)";
    throw config_error(msg);
}

} // namespace detail_config

/// Apply one key=value override (the --set form without the '=').
inline void apply_override(RunConfig& cfg, const std::string& key, const std::string& value) {
    detail_config::resolve_key(detail_config::trim(key)).set(cfg, value);
}

/// Parse a config document into cfg.  Lines hold key = value pairs; '#'
/// starts a comment; blank lines are skipped; later lines win.  Errors are
/// reported with their line number.
inline void parse_config(RunConfig& cfg, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = detail_config::trim(line);
        if (t.empty()) continue;
        const size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(lineno) +
                               ": expected key = value, got '" + t + "'");
        try {
            apply_override(cfg, t.substr(0, eq), t.substr(eq + 1));
        } catch (const config_error& e) {
            throw config_error("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
}

inline RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    parse_config(cfg, text);
    return cfg;
}

/// Range and consistency checks once all overrides are in.  User-supplied
/// values that fail here are configuration mistakes, not computation
/// failures, so everything surfaces as config_error.
inline void validate(const RunConfig& cfg) {
    try {
        validate(cfg.kinetics);
        validate(cfg.shift);
    } catch (const domain_error& e) {
        throw config_error(e.what());
    }
    if (!(cfg.field_B >= 0.0) || !std::isfinite(cfg.field_B))
        throw config_error("field_B must be finite and >= 0");
    if (!(cfg.sigma_bs > 0.0))
        throw config_error("sigma_bs must be positive");
    if (!(cfg.sigma_as0 >= 0.0))
        throw config_error("sigma_as0 must be non-negative");
    if (!(cfg.t_end >= 0.0))
        throw config_error("t_end must be non-negative");
    if (!(cfg.tol > 0.0) || !(cfg.tol < 1.0))
        throw config_error("tol must lie in (0, 1)");
    if (cfg.command == Command::sweep) {
        if (cfg.sweep.variable.empty())
            throw config_error("sweep requires sweep.variable");
        const auto& key = detail_config::resolve_key(cfg.sweep.variable);
        if (!key.numeric)
            throw config_error("sweep.variable '" + cfg.sweep.variable + "' is not numeric");
        if (cfg.sweep.points < 2 || cfg.sweep.points > 1'000'000)
            throw config_error("sweep.points must lie in [2, 1000000]");
        if (cfg.sweep.min.empty() || cfg.sweep.max.empty())
            throw config_error("sweep requires sweep.min and sweep.max");
        const double lo = detail_config::parse_number("sweep.min", cfg.sweep.min, key.dim);
        const double hi = detail_config::parse_number("sweep.max", cfg.sweep.max, key.dim);
        if (!(lo < hi))
            throw config_error("sweep needs sweep.min < sweep.max");
        if (cfg.sweep.scale == SweepScale::log && !(lo > 0.0))
            throw config_error("log sweep needs sweep.min > 0");
    }
}

/// Grid of swept values in the variable's stored unit (SI metres for
/// lengths, the customary unit otherwise), linear or logarithmic.
inline std::vector<double> sweep_grid(const RunConfig& cfg) {
    const auto& key = detail_config::resolve_key(cfg.sweep.variable);
    const double lo = detail_config::parse_number("sweep.min", cfg.sweep.min, key.dim);
    const double hi = detail_config::parse_number("sweep.max", cfg.sweep.max, key.dim);
    const long n = cfg.sweep.points;
    std::vector<double> grid(n);
    for (long i = 0; i < n; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(n - 1);
        grid[i] = cfg.sweep.scale == SweepScale::linear
                      ? lo + f * (hi - lo)
                      : lo * std::pow(hi / lo, f);
    }
    return grid;
}

} // namespace hshift
