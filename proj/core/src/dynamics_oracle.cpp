// Time-domain integration of the truncated exciton equations of motion

#include "excitonsim/dynamics_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "excitonsim/errors.hpp"

namespace excitonsim {

namespace {

using cd = std::complex<double>;

// One two-exciton amplitude and its cavity couplings to X_p and X_q.
struct PairChannel {
    Eigen::Index p{0};
    Eigen::Index q{0};
    double energy{0.0};
    double d_p{0.0}; // D_{p, pq}
    double d_q{0.0}; // D_{q, pq}
};

std::vector<PairChannel> pair_channels(const ExcitonBasis& basis, const CavityDrive& drive) {
    const Eigen::Index n = basis.omega_k.size();
    const double scale = drive.omega_rabi / basis.mu_eg;
    std::vector<PairChannel> out;
    if (basis.two_exciton == TwoExcitonModel::hard_core_dimer) {
        out.push_back({0, 1, basis.dimer_two_exciton_energy(), scale * basis.mu_k(0),
                       scale * basis.mu_k(1)});
        return out;
    }
    for (Eigen::Index p = 0; p < n; ++p) {
        for (Eigen::Index q = p + 1; q < n; ++q) {
            out.push_back({p, q, basis.omega_k(p) + basis.omega_k(q) + 2.0 * basis.u_kp(p, q),
                           scale * basis.mu_two(p, q), scale * basis.mu_two(q, p)});
        }
    }
    return out;
}

// Flat state layout: [X_0 .. X_{N-1}, Y_channel0, Y_channel1, ...].
class Rhs {
public:
    Rhs(const ExcitonBasis& basis, const CavityDrive& drive, double omega_p,
        const Dephasing& dephasing, const OracleOptions& options)
        : basis_(basis), drive_(drive), omega_p_(omega_p), dephasing_(dephasing),
          options_(options), channels_(pair_channels(basis, drive)) {}

    Eigen::Index dim() const {
        return basis_.omega_k.size() + static_cast<Eigen::Index>(channels_.size());
    }

    void operator()(double t, const Eigen::VectorXcd& s, Eigen::VectorXcd& ds) const {
        const Eigen::Index n = basis_.omega_k.size();
        const double a_c = drive_.a_c;
        const double probe = options_.probe_amplitude;
        ds.resize(s.size());
        for (Eigen::Index k = 0; k < n; ++k) {
            ds(k) = cd(-dephasing_.gamma, omega_p_ - basis_.omega_k(k)) * s(k) -
                    probe * basis_.mu_k(k);
        }
        const cd bilinear_phase = std::polar(1.0, -(omega_p_ - drive_.omega_c) * t);
        for (std::size_t c = 0; c < channels_.size(); ++c) {
            const PairChannel& ch = channels_[c];
            const Eigen::Index idx = n + static_cast<Eigen::Index>(c);
            const cd y = s(idx);
            ds(ch.p) += a_c * ch.d_p * y;
            ds(ch.q) += a_c * ch.d_q * y;
            cd dy = cd(-dephasing_.gamma2, omega_p_ + drive_.omega_c - ch.energy) * y -
                    2.0 * a_c * (ch.d_p * s(ch.p) + ch.d_q * s(ch.q));
            if (options_.include_probe_bilinear) {
                dy -= probe * (basis_.mu_k(ch.p) * s(ch.q) + basis_.mu_k(ch.q) * s(ch.p)) *
                      bilinear_phase;
            }
            ds(idx) = dy;
        }
    }

    Eigen::VectorXcd pack(const RotatingFrameState& state) const {
        const Eigen::Index n = basis_.omega_k.size();
        if (state.x.size() != n || state.y.rows() != n || state.y.cols() != n) {
            throw InputError("dynamics_oracle: state dimensions do not match the basis");
        }
        Eigen::VectorXcd s(dim());
        s.head(n) = state.x;
        for (std::size_t c = 0; c < channels_.size(); ++c) {
            s(n + static_cast<Eigen::Index>(c)) = state.y(channels_[c].p, channels_[c].q);
        }
        return s;
    }

    RotatingFrameState unpack(const Eigen::VectorXcd& s) const {
        const Eigen::Index n = basis_.omega_k.size();
        RotatingFrameState out = RotatingFrameState::zeros(static_cast<std::size_t>(n));
        out.x = s.head(n);
        for (std::size_t c = 0; c < channels_.size(); ++c) {
            const cd y = s(n + static_cast<Eigen::Index>(c));
            out.y(channels_[c].p, channels_[c].q) = y;
            out.y(channels_[c].q, channels_[c].p) = y;
        }
        return out;
    }

    // Rough upper bound on the generator's spectral radius, for the first step.
    double rate_bound() const {
        double rate = dephasing_.gamma + dephasing_.gamma2;
        for (Eigen::Index k = 0; k < basis_.omega_k.size(); ++k) {
            rate = std::max(rate, dephasing_.gamma + std::abs(omega_p_ - basis_.omega_k(k)));
        }
        double coupling = 0.0;
        for (const auto& ch : channels_) {
            rate = std::max(rate, dephasing_.gamma2 +
                                      std::abs(omega_p_ + drive_.omega_c - ch.energy));
            coupling += std::abs(ch.d_p) + std::abs(ch.d_q);
        }
        return rate + 2.0 * drive_.a_c * coupling;
    }

private:
    const ExcitonBasis& basis_;
    CavityDrive drive_;
    double omega_p_;
    Dephasing dephasing_;
    OracleOptions options_;
    std::vector<PairChannel> channels_;
};

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b - b_hat, the embedded error weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

} // namespace

RotatingFrameState RotatingFrameState::zeros(std::size_t n) {
    const auto m = static_cast<Eigen::Index>(n);
    return {Eigen::VectorXcd::Zero(m), Eigen::MatrixXcd::Zero(m, m)};
}

RotatingFrameState derivative(const RotatingFrameState& state, const ExcitonBasis& basis,
                              const CavityDrive& drive, double omega_p,
                              const Dephasing& dephasing, const OracleOptions& options,
                              double t) {
    const Rhs rhs(basis, drive, omega_p, dephasing, options);
    Eigen::VectorXcd ds;
    rhs(t, rhs.pack(state), ds);
    return rhs.unpack(ds);
}

IntegrationResult integrate_to_steady(const ExcitonBasis& basis, const CavityDrive& drive,
                                      double omega_p, const Dephasing& dephasing, double tol,
                                      double t_max, const OracleOptions& options) {
    if (!(tol > 0.0)) {
        throw InputError("integrate_to_steady: tol must be > 0");
    }
    drive.validate();
    dephasing.validate();
    const Rhs rhs(basis, drive, omega_p, dephasing, options);

    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(rhs.dim());
    Eigen::VectorXcd k1, k2, k3, k4, k5, k6, k7, y_new, err;
    double t = 0.0;
    rhs(t, y, k1);

    IntegrationResult result;
    double residual = k1.cwiseAbs().maxCoeff();
    const double rate = rhs.rate_bound();
    double h = 0.5 / rate;
    // Near the fixed point the residual settles at about rate * (local error
    // scale), so the error scale is capped to let it fall below tol.
    const double state_tol = 0.05 * tol / rate;

    while (residual >= tol) {
        if (t >= t_max) {
            std::ostringstream msg;
            msg << "integrate_to_steady: no steady state by t = " << t << " (residual "
                << residual << ", tol " << tol << ")";
            throw ConvergenceError(msg.str(), residual);
        }
        h = std::min(h, t_max - t);

        rhs(t + c2 * h, y + h * (a21 * k1), k2);
        rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2), k3);
        rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3), k4);
        rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), k5);
        rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), k6);
        y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        rhs(t + h, y_new, k7);
        err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double err_norm = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const double scale = std::min(
                options.atol + options.rtol * std::max(std::abs(y(i)), std::abs(y_new(i))),
                state_tol);
            err_norm = std::max(err_norm, std::abs(err(i)) / scale);
        }

        if (err_norm <= 1.0) {
            t += h;
            y.swap(y_new);
            k1.swap(k7);
            residual = k1.cwiseAbs().maxCoeff();
            ++result.steps;
        } else {
            ++result.rejected;
        }
        const double factor =
            err_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
        h *= factor;
    }

    result.state = rhs.unpack(y);
    result.residual = residual;
    result.time = t;
    return result;
}

double spectral_abscissa(const ExcitonBasis& basis, const CavityDrive& drive, double omega_p,
                         const Dephasing& dephasing) {
    OracleOptions options;
    options.probe_amplitude = 0.0; // homogeneous part only
    const Rhs rhs(basis, drive, omega_p, dephasing, options);
    const Eigen::Index dim = rhs.dim();
    Eigen::MatrixXcd generator(dim, dim);
    Eigen::VectorXcd column;
    for (Eigen::Index j = 0; j < dim; ++j) {
        rhs(0.0, Eigen::VectorXcd::Unit(dim, j), column);
        generator.col(j) = column;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(generator, false);
    if (solver.info() != Eigen::Success) {
        throw NumericError("spectral_abscissa: eigensolver did not converge");
    }
    return solver.eigenvalues().real().maxCoeff();
}

double probe_bilinear_ratio(const RotatingFrameState& state, const ExcitonBasis& basis,
                            const Dephasing& dephasing, double probe_amplitude) {
    const Eigen::Index n = basis.omega_k.size();
    double source = 0.0;
    double amplitude = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
        for (Eigen::Index q = p + 1; q < n; ++q) {
            source = std::max(source, std::abs(probe_amplitude * (basis.mu_k(p) * state.x(q) +
                                                                  basis.mu_k(q) * state.x(p))));
            amplitude = std::max(amplitude, std::abs(state.y(p, q)));
        }
    }
    if (amplitude == 0.0) {
        throw InputError("probe_bilinear_ratio: state has no two-exciton amplitude");
    }
    return source / (dephasing.gamma2 * amplitude);
}

} // namespace excitonsim
