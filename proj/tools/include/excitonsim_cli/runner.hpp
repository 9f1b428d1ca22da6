// Scenario execution: builds the physics inputs from a resolved RunConfig,
// runs the sweeps and writes data files plus the JSON sidecar.

#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "excitonsim/cavity_response.hpp"
#include "excitonsim/exciton_model.hpp"
#include "excitonsim_cli/config.hpp"

namespace excitonsim::cli {

struct RunOptions {
    std::size_t workers{1};
    std::filesystem::path out_dir{"."};
};

struct RunSummary {
    std::vector<std::string> files; // data files, relative to out_dir
    std::string sidecar;
    std::vector<std::string> notes; // per-point failures, reported but not fatal
    double wall_seconds{0.0};
};

AggregateSpec aggregate_spec(const RunConfig& config);

// Probe reference: lowest homogeneous state for chains, the bright state for
// the hard-core dimer. Grids are centred here in units of gamma.
double reference_frequency(const ExcitonBasis& basis);

// Explicit omega_c, or the band-edge two-photon resonance when set to auto.
double cavity_frequency(const RunConfig& config, const ExcitonBasis& basis);

ProbeGrid probe_grid(const RunConfig& config, const ExcitonBasis& basis);

// Letter suffix for curve i: a, b, ..., z, aa, ab, ...
std::string curve_letter(std::size_t i);

RunSummary run_scenario(const RunConfig& config, const RunOptions& options);

struct OracleCheckRow {
    double omega_p{0.0};
    std::complex<double> chi_solver;
    std::complex<double> chi_oracle;
    double residual{0.0};
};

// Compares the steady-state solve with time integration of the equations of
// motion at `points` probe frequencies, for the homogeneous system and the
// largest a_c of the configuration.
std::vector<OracleCheckRow> oracle_check(const RunConfig& config, std::size_t points);

} // namespace excitonsim::cli
