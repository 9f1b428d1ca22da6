// Gaussian static disorder and ensemble-averaged spectra

#include "excitonsim/disorder_ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "excitonsim/errors.hpp"
#include "excitonsim/parallel.hpp"
#include "excitonsim/random_streams.hpp"

namespace excitonsim {

namespace {

using cd = std::complex<double>;

// Running statistics of one grid point: complex sum of chi plus a
// Welford/Chan mean and second moment of Im chi.
struct PointStats {
    std::size_t count{0};
    cd chi_sum{0.0, 0.0};
    double im_mean{0.0};
    double im_m2{0.0};

    void add(const cd& chi) {
        ++count;
        chi_sum += chi;
        const double delta = chi.imag() - im_mean;
        im_mean += delta / static_cast<double>(count);
        im_m2 += delta * (chi.imag() - im_mean);
    }

    static PointStats merge(const PointStats& a, const PointStats& b) {
        if (a.count == 0) {
            return b;
        }
        if (b.count == 0) {
            return a;
        }
        PointStats out;
        out.count = a.count + b.count;
        out.chi_sum = a.chi_sum + b.chi_sum;
        const double na = static_cast<double>(a.count);
        const double nb = static_cast<double>(b.count);
        const double delta = b.im_mean - a.im_mean;
        out.im_mean = a.im_mean + delta * nb / (na + nb);
        out.im_m2 = a.im_m2 + b.im_m2 + delta * delta * na * nb / (na + nb);
        return out;
    }
};

struct BlockResult {
    std::vector<PointStats> stats;
    std::size_t failures{0};
    std::string first_failure;
};

// Fixed-topology pairwise merge of blocks [lo, hi).
std::vector<PointStats> tree_merge(const std::vector<BlockResult>& blocks, std::size_t lo,
                                   std::size_t hi) {
    if (hi - lo == 1) {
        return blocks[lo].stats;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    std::vector<PointStats> left = tree_merge(blocks, lo, mid);
    const std::vector<PointStats> right = tree_merge(blocks, mid, hi);
    for (std::size_t i = 0; i < left.size(); ++i) {
        left[i] = PointStats::merge(left[i], right[i]);
    }
    return left;
}

} // namespace

void DisorderModel::validate() const {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw InputError("DisorderModel: sigma must be finite and >= 0");
    }
    if (n_realizations < 1) {
        throw InputError("DisorderModel: n_realizations must be >= 1");
    }
}

SiteShifts sample_realization(const DisorderModel& model, std::size_t n_sites, std::size_t index) {
    model.validate();
    if (index >= model.n_realizations) {
        throw InputError("sample_realization: index must be < n_realizations");
    }
    SiteShifts shifts = SiteShifts::zeros(n_sites);
    if (model.sigma == 0.0) {
        return shifts;
    }
    const rng::NormalStream stream(model.seed, index);
    for (std::size_t i = 0; i < n_sites; ++i) {
        shifts.d(static_cast<Eigen::Index>(i)) = model.sigma * stream(i);
    }
    return shifts;
}

SpectrumResult average_spectra(const AggregateSpec& spec, const CavityDrive& drive,
                               const ProbeGrid& grid, const DisorderModel& model,
                               const Dephasing& dephasing, std::size_t workers) {
    spec.validate();
    drive.validate();
    grid.validate();
    model.validate();
    dephasing.validate();

    const std::size_t points = grid.size();
    const std::size_t n_blocks = (model.n_realizations + kEnsembleBlockSize - 1) / kEnsembleBlockSize;
    std::vector<BlockResult> blocks(n_blocks);

    parallel_for(n_blocks, workers, [&](std::size_t b) {
        BlockResult& block = blocks[b];
        block.stats.assign(points, PointStats{});
        const std::size_t first = b * kEnsembleBlockSize;
        const std::size_t last = std::min(first + kEnsembleBlockSize, model.n_realizations);
        for (std::size_t r = first; r < last; ++r) {
            const ExcitonBasis basis = build_basis(spec, sample_realization(model, spec.n_sites, r));
            const SteadyStateSolver solver(basis, drive, dephasing);
            for (std::size_t i = 0; i < points; ++i) {
                try {
                    block.stats[i].add(solver.solve(grid.omega_p[i]).chi);
                } catch (const NumericError& e) {
                    if (block.failures++ == 0) {
                        block.first_failure = e.what();
                    }
                }
            }
        }
    });

    std::size_t failures = 0;
    std::string first_failure;
    for (const auto& block : blocks) {
        if (block.failures > 0 && first_failure.empty()) {
            first_failure = block.first_failure;
        }
        failures += block.failures;
    }
    if (failures * 100 > points * model.n_realizations) {
        std::ostringstream msg;
        msg << "average_spectra: " << failures << " of " << points * model.n_realizations
            << " point solves failed; first: " << first_failure;
        throw NumericError(msg.str());
    }

    const std::vector<PointStats> total = tree_merge(blocks, 0, n_blocks);

    SpectrumResult result;
    result.omega_p = grid.omega_p;
    result.chi.resize(points);
    result.absorption.resize(points);
    result.absorption_stderr.resize(points);
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < points; ++i) {
        const PointStats& s = total[i];
        if (s.count == 0) {
            result.chi[i] = cd(nan, nan);
            result.absorption_stderr[i] = nan;
            result.failures.push_back({i, grid.omega_p[i], "no realization succeeded"});
        } else {
            const double n = static_cast<double>(s.count);
            result.chi[i] = s.chi_sum / n;
            result.absorption_stderr[i] =
                s.count > 1 ? std::sqrt(s.im_m2 / (n - 1.0) / n) : 0.0;
        }
        result.absorption[i] = result.chi[i].imag();
    }
    result.metadata.seed = model.seed;
    result.metadata.realizations = model.n_realizations;
    return result;
}

} // namespace excitonsim
