#include "excitonsim_cli/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <system_error>

#include "excitonsim/dimer_eit.hpp"
#include "excitonsim/disorder_ensemble.hpp"
#include "excitonsim/dynamics_oracle.hpp"
#include "excitonsim/effective_levels.hpp"
#include "excitonsim/errors.hpp"
#include "excitonsim/parallel.hpp"
#include "excitonsim/version.hpp"

namespace excitonsim::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string num(double v) {
    if (std::isnan(v)) return "NaN";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// NaN and infinities become null so the document stays valid JSON.
json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

void prepare_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError("cannot create output directory '" + dir.string() + "'" +
                      (ec ? ": " + ec.message() : std::string()));
    }
}

Dephasing dephasing_of(const RunConfig& c) { return Dephasing{c.real("gamma"), c.real("gamma2")}; }

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return v;
}

std::string spectrum_csv(const SpectrumResult& r, double omega_ref, double gamma) {
    std::string s = "omega_p_meV,delta_over_gamma,re_chi,im_chi\n";
    for (std::size_t i = 0; i < r.omega_p.size(); ++i) {
        s += num(r.omega_p[i]) + ',' + num((r.omega_p[i] - omega_ref) / gamma) + ',' +
             num(r.chi[i].real()) + ',' + num(r.chi[i].imag()) + '\n';
    }
    return s;
}

std::string spectrum_json(const SpectrumResult& r, double omega_ref, double gamma, double a_c) {
    json doc;
    doc["a_c"] = a_c;
    doc["realizations"] = r.metadata.realizations;
    json omega = json::array(), delta = json::array(), re = json::array(), im = json::array(),
         err = json::array();
    for (std::size_t i = 0; i < r.omega_p.size(); ++i) {
        omega.push_back(jnum(r.omega_p[i]));
        delta.push_back(jnum((r.omega_p[i] - omega_ref) / gamma));
        re.push_back(jnum(r.chi[i].real()));
        im.push_back(jnum(r.chi[i].imag()));
        err.push_back(r.absorption_stderr.empty() ? json(nullptr) : jnum(r.absorption_stderr[i]));
    }
    doc["omega_p_meV"] = omega;
    doc["delta_over_gamma"] = delta;
    doc["re_chi"] = re;
    doc["im_chi"] = im;
    doc["im_chi_stderr"] = err;
    return doc.dump(1) + '\n';
}

struct MinimumCurve {
    std::vector<double> a_c;
    std::vector<double> a_min;
    std::vector<double> stderr_;
};

std::string minimum_csv(const MinimumCurve& m) {
    std::string s = "a_c,a_min,a_min_normalized,stderr\n";
    for (std::size_t i = 0; i < m.a_c.size(); ++i) {
        s += num(m.a_c[i]) + ',' + num(m.a_min[i]) + ',' + num(m.a_min[i] / m.a_min[0]) + ',' +
             num(m.stderr_[i]) + '\n';
    }
    return s;
}

std::string minimum_json(const MinimumCurve& m, double sigma_over_j) {
    json doc;
    doc["sigma_over_j"] = sigma_over_j;
    json a = json::array(), v = json::array(), n = json::array(), e = json::array();
    for (std::size_t i = 0; i < m.a_c.size(); ++i) {
        a.push_back(jnum(m.a_c[i]));
        v.push_back(jnum(m.a_min[i]));
        n.push_back(jnum(m.a_min[i] / m.a_min[0]));
        e.push_back(jnum(m.stderr_[i]));
    }
    doc["a_c"] = a;
    doc["a_min"] = v;
    doc["a_min_normalized"] = n;
    doc["stderr"] = e;
    return doc.dump(1) + '\n';
}

std::string tracks_csv(const EigenTracks& t) {
    std::string s = "omega2,e1,e2,e3,e4\n";
    for (std::size_t i = 0; i < t.omega2.size(); ++i) {
        s += num(t.omega2[i]);
        for (double e : t.values[i]) s += ',' + num(e);
        s += '\n';
    }
    return s;
}

std::string tracks_json(const EigenTracks& t) {
    json doc;
    doc["omega2"] = t.omega2;
    json values = json::array();
    for (const auto& row : t.values) values.push_back(json(std::vector<double>(row.begin(), row.end())));
    doc["eigenvalues"] = values;
    return doc.dump(1) + '\n';
}

DimerParams dimer_params(const RunConfig& c) {
    DimerParams p;
    p.eps1 = p.eps2 = c.real("omega_e");
    p.j12 = c.real("j_nn");
    p.u12 = c.real("u_nn");
    p.gamma1 = c.real("gamma");
    p.gamma12 = c.real("gamma2");
    p.mu_eg = c.real("mu_eg");
    const DimerEigens e = dimer_eigens(p);
    p.mu1 = e.mu_plus;
    p.d12 = c.real("omega_rabi") * e.mu_plus / p.mu_eg;
    return p;
}

void run_minimum(const RunConfig& c, const RunOptions& o, const std::string& ext,
                 RunSummary& summary) {
    const DimerParams base = dimer_params(c);
    const auto a_grid = linspace(0.0, c.real("a_c_max"), static_cast<std::size_t>(c.integer("a_c_points")));
    const auto n_real = static_cast<std::size_t>(c.integer("realizations"));
    const auto sigmas = c.reals("sigma_over_j");
    for (std::size_t s = 0; s < sigmas.size(); ++s) {
        const double sigma = sigmas[s] * std::abs(base.j12);
        MinimumCurve curve{a_grid, std::vector<double>(a_grid.size()), std::vector<double>(a_grid.size())};
        parallel_for(a_grid.size(), o.workers, [&](std::size_t i) {
            DimerParams p = base;
            p.a_c = a_grid[i];
            if (sigma == 0.0) {
                curve.a_min[i] = a_min_homogeneous(p);
                curve.stderr_[i] = 0.0;
            } else {
                const MonteCarloEstimate est = a_min_gaussian_mc(p, sigma, n_real, c.seed);
                curve.a_min[i] = est.mean;
                curve.stderr_[i] = est.std_error;
            }
        });
        const std::string name = "fig4c_" + curve_letter(s) + ext;
        write_file(o.out_dir / name, ext == ".csv" ? minimum_csv(curve) : minimum_json(curve, sigmas[s]));
        summary.files.push_back(name);
    }
}

void run_spectra(const RunConfig& c, const RunOptions& o, const std::string& ext,
                 RunSummary& summary) {
    const AggregateSpec spec = aggregate_spec(c);
    const ExcitonBasis basis = build_basis(spec, SiteShifts::zeros(spec.n_sites));
    const double omega_ref = reference_frequency(basis);
    const double omega_c = cavity_frequency(c, basis);
    const ProbeGrid grid = probe_grid(c, basis);
    const Dephasing dephasing = dephasing_of(c);
    const double sigma = c.real("sigma");
    const std::string prefix = scenario_name(c.scenario) + "_";
    const auto a_values = c.reals("a_c");

    for (std::size_t i = 0; i < a_values.size(); ++i) {
        const CavityDrive drive{omega_c, a_values[i], c.real("omega_rabi")};
        SpectrumResult r;
        if (sigma > 0.0) {
            const DisorderModel model{sigma, static_cast<std::size_t>(c.integer("realizations")), c.seed};
            r = average_spectra(spec, drive, grid, model, dephasing, o.workers);
        } else {
            r = sweep_spectrum(basis, drive, grid, dephasing, o.workers);
        }
        for (const auto& f : r.failures) {
            summary.notes.push_back("curve " + curve_letter(i) + ": " + f.message);
        }
        const std::string name = prefix + curve_letter(i) + ext;
        write_file(o.out_dir / name, ext == ".csv" ? spectrum_csv(r, omega_ref, dephasing.gamma)
                                                   : spectrum_json(r, omega_ref, dephasing.gamma, a_values[i]));
        summary.files.push_back(name);
    }

    if (c.params.count("emit_inset") && c.boolean("emit_inset")) {
        const bool band_edge = c.scenario == Scenario::fig2a;
        const EffectiveParams tmpl = band_edge ? four_level_resonant_template() : three_level_detuned_template();
        const CouplingRatios ratios = band_edge ? four_level_resonant_ratios() : three_level_detuned_ratios();
        const auto omega2 = linspace(0.0, c.real("inset_omega2_max"),
                                     static_cast<std::size_t>(c.integer("inset_points")));
        const EigenTracks tracks = eigen_tracks(tmpl, ratios, omega2);
        const std::string name = prefix + "inset" + ext;
        write_file(o.out_dir / name, ext == ".csv" ? tracks_csv(tracks) : tracks_json(tracks));
        summary.files.push_back(name);
    }
}

} // namespace

AggregateSpec aggregate_spec(const RunConfig& c) {
    AggregateSpec spec;
    spec.n_sites = static_cast<std::size_t>(c.integer("n_sites"));
    spec.omega_e = c.real("omega_e");
    spec.j_nn = c.real("j_nn");
    spec.u_nn = c.real("u_nn");
    spec.mu_eg = c.real("mu_eg");
    spec.gamma = c.real("gamma");
    spec.coupling_range = c.text("coupling_range") == "full_dipole" ? CouplingRange::full_dipole
                                                                    : CouplingRange::nearest_neighbor;
    spec.two_exciton = c.text("two_exciton") == "hard_core_dimer" ? TwoExcitonModel::hard_core_dimer
                                                                  : TwoExcitonModel::bosonic;
    spec.validate();
    return spec;
}

double reference_frequency(const ExcitonBasis& basis) {
    if (basis.two_exciton == TwoExcitonModel::hard_core_dimer) {
        Eigen::Index bright = 0;
        basis.mu_k.cwiseAbs().maxCoeff(&bright);
        return basis.omega_k(bright);
    }
    return basis.omega_k(0);
}

double cavity_frequency(const RunConfig& c, const ExcitonBasis& basis) {
    if (!c.is_auto("omega_c")) return c.real("omega_c");
    if (basis.two_exciton == TwoExcitonModel::hard_core_dimer) {
        return basis.dimer_two_exciton_energy() - reference_frequency(basis);
    }
    return basis.omega_k(1) + 2.0 * basis.u_kp(0, 1);
}

ProbeGrid probe_grid(const RunConfig& c, const ExcitonBasis& basis) {
    const double ref = reference_frequency(basis);
    const double gamma = c.real("gamma");
    return ProbeGrid::uniform(ref + gamma * c.real("delta_min"), ref + gamma * c.real("delta_max"),
                              static_cast<std::size_t>(c.integer("grid_points")));
}

std::string curve_letter(std::size_t i) {
    std::string s;
    ++i;
    while (i > 0) {
        --i;
        s.insert(s.begin(), static_cast<char>('a' + i % 26));
        i /= 26;
    }
    return s;
}

RunSummary run_scenario(const RunConfig& config, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    prepare_dir(options.out_dir);
    RunSummary summary;
    const std::string ext = config.format == OutputFormat::csv ? ".csv" : ".json";
    if (config.scenario == Scenario::fig4c) {
        run_minimum(config, options, ext, summary);
    } else {
        run_spectra(config, options, ext, summary);
    }
    summary.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    json sidecar = to_json(config);
    sidecar["version"] = kVersion;
    sidecar["workers"] = options.workers;
    sidecar["wall_time_s"] = summary.wall_seconds;
    sidecar["files"] = summary.files;
    sidecar["failed_points"] = summary.notes;
    summary.sidecar = scenario_name(config.scenario) + ".json";
    write_file(options.out_dir / summary.sidecar, sidecar.dump(2) + '\n');
    return summary;
}

std::vector<OracleCheckRow> oracle_check(const RunConfig& c, std::size_t points) {
    if (c.scenario == Scenario::fig4c) {
        throw InputError("the oracle check needs a spectrum scenario, not fig4c");
    }
    if (points == 0) throw InputError("the oracle check needs at least one point");
    const AggregateSpec spec = aggregate_spec(c);
    const ExcitonBasis basis = build_basis(spec, SiteShifts::zeros(spec.n_sites));
    const auto a_values = c.reals("a_c");
    const CavityDrive drive{cavity_frequency(c, basis), a_values.back(), c.real("omega_rabi")};
    const Dephasing dephasing = dephasing_of(c);
    const ProbeGrid grid = probe_grid(c, basis);
    const SteadyStateSolver solver(basis, drive, dephasing);

    std::vector<OracleCheckRow> rows;
    for (std::size_t j = 0; j < points; ++j) {
        const std::size_t idx = points == 1 ? grid.size() / 2 : j * (grid.size() - 1) / (points - 1);
        const double omega_p = grid.omega_p[idx];
        const IntegrationResult r = integrate_to_steady(basis, drive, omega_p, dephasing, 1e-10, 1e3);
        const std::complex<double> chi_oracle =
            basis.mu_k.cast<std::complex<double>>().dot(r.state.x) / std::complex<double>(0.0, 1.0);
        rows.push_back({omega_p, solver.solve(omega_p).chi, chi_oracle, r.residual});
    }
    return rows;
}

} // namespace excitonsim::cli
