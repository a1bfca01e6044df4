// Command-line front end over the gravwell C API.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gravwell.h"

namespace {

struct Flag
{
    char const* name;
    char const* key;
    char const* help;
};

// Flag name, config key, help text.
std::vector<Flag> const kFlags = {
    {"--h", "h", "Slit height in units of l0"},
    {"--grid", "grid", "Scan grid A:B:STEP (h for count/scan, x or r for fnplot)"},
    {"--chi", "chi", "Barrier to beam energy ratio uc/e"},
    {"--eta", "eta", "Roughness amplitude in units of l0"},
    {"--r", "r", "Correlation radius in units of l0"},
    {"--geometry", "geometry", "direct|inverse|both"},
    {"--mode", "mode", "auto|full|suppressed"},
    {"--levels,--n", "levels", "Number of levels"},
    {"--preset", "preset", "fig10|fig11|fig14|optimal"},
    {"--out", "out", "Output CSV path (stdout when absent)"},
    {"--threads", "threads", "Worker threads (GRAVWELL_THREADS when absent)"},
    {"--well", "well", "infinite|finite"},
    {"--which", "which", "fnplot table: f0|f1|f1_quadrature|f|f_vs_r|all"},
    {"--init", "init", "uniform|equilibrium"},
    {"--method", "method", "count method: direct|transport"},
    {"--tails", "tails", "1 adds exterior tails to the finite-well norm"},
    {"--samples", "samples", "transport sample count"},
    {"--mass", "mass", "Particle mass (kg)"},
    {"--g", "g", "Gravitational acceleration (m/s^2)"},
    {"--Uc", "Uc_J", "Barrier height (J)"},
    {"--flight-time", "flight_time_s", "Time of flight (s)"},
};

int exit_code(gw_status s)
{
    switch (s)
    {
    case GW_OK: return 0;
    case GW_ERR_VALIDATION:
    case GW_ERR_DOMAIN:
    case GW_ERR_ARGUMENT: return 2;
    default: return 1;
    }
}

int report(gw_status s)
{
    std::cerr << "gravwell: " << gw_status_name(s) << ": " << gw_last_error() << '\n';
    return exit_code(s);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Gravitational quantum states of neutrons in a rough slit"};
    // "-h" is taken by the slit height flag.
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);

    std::string config_path;
    std::map<std::string, std::string> values;
    std::vector<std::pair<CLI::Option*, std::string>> bound;

    char const* commands[][2] = {
        {"levels", "Bound levels at one slit height"},
        {"rates", "Interstate transition rates"},
        {"absorb", "Direct absorption per level"},
        {"count", "Exit count versus slit height"},
        {"transport", "Population evolution over the flight time"},
        {"scan", "Per-level quantities over an h grid"},
        {"fnplot", "Tables of the kinematic functions"},
    };
    for (auto const& c : commands)
    {
        auto* sub = app.add_subcommand(c[0], c[1]);
        sub->add_option("--config", config_path, "Key = value config file");
        for (auto const& f : kFlags)
        {
            auto* opt = sub->add_option(f.name, values[f.key], f.help);
            bound.emplace_back(opt, f.key);
        }
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::CallForHelp const& e)
    {
        return app.exit(e);
    }
    catch (CLI::CallForAllHelp const& e)
    {
        return app.exit(e);
    }
    catch (CLI::ParseError const& e)
    {
        std::cerr << "gravwell: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    gw_config* cfg = nullptr;
    if (gw_status s = gw_config_create(&cfg); s != GW_OK)
        return report(s);
    auto cleanup = [&] { gw_config_destroy(cfg); };

    gw_status s = GW_OK;
    if (!config_path.empty())
        s = gw_config_load_file(cfg, config_path.c_str());
    for (auto const& [opt, key] : bound)
    {
        if (s != GW_OK)
            break;
        if (opt->count() > 0 && sub->get_option_no_throw(opt->get_name()) == opt)
            s = gw_config_set(cfg, key.c_str(), values[key].c_str());
    }
    if (s == GW_OK)
        s = gw_config_validate(cfg);
    if (s != GW_OK)
    {
        int const code = report(s);
        cleanup();
        return code;
    }
    for (size_t i = 0; i < gw_config_warning_count(cfg); ++i)
        std::cerr << "gravwell: warning: " << gw_config_warning(cfg, i) << '\n';

    gw_tableset* ts = nullptr;
    s = gw_run(cfg, sub->get_name().c_str(), &ts);
    if (s == GW_OK)
    {
        std::string const out = gw_config_out(cfg);
        if (out.empty())
        {
            char const* text = nullptr;
            s = gw_tableset_csv(ts, &text);
            if (s == GW_OK)
                std::fputs(text, stdout);
        }
        else
            s = gw_tableset_write(ts, out.c_str());
    }
    gw_tableset_destroy(ts);
    int const code = s == GW_OK ? 0 : report(s);
    cleanup();
    return code;
}
