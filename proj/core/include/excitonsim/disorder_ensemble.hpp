// Gaussian static disorder and ensemble-averaged spectra

#pragma once

#include <cstddef>
#include <cstdint>

#include "excitonsim/cavity_response.hpp"
#include "excitonsim/exciton_model.hpp"

namespace excitonsim {

struct DisorderModel {
    double sigma{0.0};              // standard deviation of site shifts, meV
    std::size_t n_realizations{1};
    std::uint64_t seed{0};

    void validate() const;
};

// Realizations are grouped in blocks of this many indices; each block is reduced
// in index order and blocks are merged by a fixed binary tree.
inline constexpr std::size_t kEnsembleBlockSize = 16;

// Independent Normal(0, sigma) shifts for realization `index`, drawn from the
// counter-based stream keyed by (seed, index).
SiteShifts sample_realization(const DisorderModel& model, std::size_t n_sites, std::size_t index);

// Pointwise mean of chi over the realizations, with the standard error of Im chi
// in `absorption_stderr`. The drive (including omega_c) is held fixed across
// realizations. Bit-identical for any worker count.
SpectrumResult average_spectra(const AggregateSpec& spec, const CavityDrive& drive,
                               const ProbeGrid& grid, const DisorderModel& model,
                               const Dephasing& dephasing, std::size_t workers = 1);

} // namespace excitonsim
