#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hshift/commands.hpp"
#include "hshift/config.hpp"
#include "hshift/errors.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw hshift::config_error("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperfine shift model of two-dimensional atomic hydrogen"};
    app.get_formatter()->column_width(26);

    std::string command;
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_path;
    std::string format;

    app.add_option("command", command,
                   "levels | pair-check | kinetics | shift | sweep | compare")
        ->required();
    app.add_option("--config", config_path, "config file with key = value lines");
    app.add_option("--set", sets, "override one key=value (repeatable)")
        ->take_all();
    app.add_option("--out", out_path, "write output here instead of stdout");
    app.add_option("--format", format, "csv or kv (default depends on the command)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        hshift::RunConfig cfg;
        if (!config_path.empty())
            hshift::parse_config(cfg, slurp(config_path));
        for (const std::string& s : sets) {
            const size_t eq = s.find('=');
            if (eq == std::string::npos)
                throw hshift::config_error("--set expects key=value, got '" + s + "'");
            hshift::apply_override(cfg, s.substr(0, eq), s.substr(eq + 1));
        }
        hshift::apply_override(cfg, "command", command);
        if (!format.empty())
            hshift::apply_override(cfg, "format", format);
        if (!out_path.empty())
            cfg.out = out_path;

        const std::string output = hshift::run_command(cfg);

        if (cfg.out.empty()) {
            std::cout << output;
        } else {
            std::ofstream f(cfg.out, std::ios::binary);
            if (!f)
                throw hshift::config_error("cannot open output file '" + cfg.out + "'");
            f << output;
            if (!f)
                throw hshift::domain_error("write to '" + cfg.out + "' failed");
        }
        return 0;
    } catch (const hshift::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const hshift::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
