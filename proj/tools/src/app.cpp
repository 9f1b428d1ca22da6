#include "excitonsim_cli/app.hpp"

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "excitonsim/errors.hpp"
#include "excitonsim/parallel.hpp"
#include "excitonsim/version.hpp"
#include "excitonsim_cli/config.hpp"
#include "excitonsim_cli/runner.hpp"

namespace excitonsim::cli {

namespace {

std::size_t parse_workers(const std::string& text, const std::string& origin) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != text.size() || v < 1) {
        throw InputError(origin + " must be a positive integer, got '" + text + "'");
    }
    return static_cast<std::size_t>(v);
}

std::string key_list(Scenario s) {
    std::ostringstream out;
    for (const auto& p : valid_params(s)) out << "  " << p.key << ": " << p.help << '\n';
    return out.str();
}

std::string fmt(const char* f, double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Probe response of dye aggregates dressed by a cavity mode", "excitonsim"};
    app.set_version_flag("--version", std::string(kVersion));

    std::optional<std::string> scenario_flag;
    std::optional<std::string> scenario_pos;
    std::optional<std::string> config_path;
    std::vector<std::string> assignments;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> workers_flag;
    std::string out_dir = ".";
    std::optional<std::string> format;
    bool validate_only = false;
    bool list_keys = false;
    std::optional<std::size_t> oracle_points;

    app.add_option("scenario_name", scenario_pos, "Scenario (same as --scenario)");
    app.add_option("--scenario", scenario_flag,
                   "fig2a | fig2b | fig3a | fig3b | fig4ab | fig4c | custom");
    app.add_option("--config", config_path, "key = value file or a JSON sidecar from a previous run");
    app.add_option("--set", assignments, "Override one parameter: key=value (repeatable)");
    app.add_option("--seed", seed, "Seed for disorder draws");
    app.add_option("--workers", workers_flag,
                   "Worker threads (default: $EXCITON_SIM_WORKERS, else hardware concurrency)");
    app.add_option("--out", out_dir, "Output directory (created if missing)");
    app.add_option("--format", format, "csv | json");
    app.add_flag("--validate", validate_only, "Print the resolved configuration without running");
    app.add_flag("--list-keys", list_keys, "List the parameter keys of the scenario");
    app.add_option("--oracle-check", oracle_points,
                   "Compare the steady-state solve with time integration at this many probe points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, r;
        const int code = app.exit(e, o, r);
        out << o.str();
        err << r.str();
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (scenario_pos && scenario_flag && *scenario_pos != *scenario_flag) {
            throw InputError("scenario given twice: '" + *scenario_pos + "' and --scenario " +
                             *scenario_flag);
        }
        CommandLineSettings cmd;
        cmd.scenario = scenario_flag ? scenario_flag : scenario_pos;
        cmd.assignments = assignments;
        cmd.seed = seed;
        cmd.format = format;

        if (list_keys) {
            if (!cmd.scenario) throw InputError("--list-keys needs a scenario");
            out << key_list(parse_scenario(*cmd.scenario));
            return kExitOk;
        }

        std::optional<ConfigLayer> file;
        if (config_path) file = load_config_file(*config_path);

        std::vector<std::string> warnings;
        const RunConfig config = resolve(file, cmd, warnings);
        for (const auto& w : warnings) err << w << '\n';

        if (validate_only) {
            out << to_json(config).dump(2) << '\n';
            return kExitOk;
        }

        RunOptions options;
        options.out_dir = out_dir;
        if (workers_flag) {
            options.workers = parse_workers(*workers_flag, "--workers");
        } else if (const char* env = std::getenv("EXCITON_SIM_WORKERS"); env && *env) {
            options.workers = parse_workers(env, "EXCITON_SIM_WORKERS");
        } else {
            options.workers = default_workers();
        }

        if (oracle_points) {
            out << "omega_p_meV,re_chi_solver,im_chi_solver,re_chi_oracle,im_chi_oracle,rel_diff,residual\n";
            double worst = 0.0;
            for (const auto& row : oracle_check(config, *oracle_points)) {
                const double rel = std::abs(row.chi_oracle - row.chi_solver) /
                                   std::max(std::abs(row.chi_solver), 1e-300);
                worst = std::max(worst, rel);
                out << fmt("%.10g", row.omega_p) << ',' << fmt("%.10g", row.chi_solver.real()) << ','
                    << fmt("%.10g", row.chi_solver.imag()) << ',' << fmt("%.10g", row.chi_oracle.real())
                    << ',' << fmt("%.10g", row.chi_oracle.imag()) << ',' << fmt("%.3e", rel) << ','
                    << fmt("%.3e", row.residual) << '\n';
            }
            err << "largest relative difference " << fmt("%.3e", worst) << '\n';
            return kExitOk;
        }

        const RunSummary summary = run_scenario(config, options);
        for (const auto& f : summary.files) out << (options.out_dir / f).string() << '\n';
        out << (options.out_dir / summary.sidecar).string() << '\n';
        // Failed grid points are written as NaN gaps; the run still reports them as a numeric failure.
        for (const auto& note : summary.notes) err << "numeric error: " << note << '\n';
        return summary.notes.empty() ? kExitOk : kExitNumeric;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}

} // namespace excitonsim::cli
