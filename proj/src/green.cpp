#include "qfc/green.hpp"

#include <cmath>
#include <vector>

#include "qfc/error.hpp"
#include "qfc/fft.hpp"
#include "qfc/parallel.hpp"

namespace qfc {

Eigen::MatrixXcd GreenFunction::stacked() const {
    const auto m = static_cast<Eigen::Index>(n());
    Eigen::MatrixXcd g(2 * m, 2 * m);
    g.topLeftCorner(m, m) = ss;
    g.topRightCorner(m, m) = sr;
    g.bottomLeftCorner(m, m) = rs;
    g.bottomRightCorner(m, m) = rr;
    return g;
}

GreenFunction GreenFunction::identity(const TemporalGrid& grid, double signal_wavelength_nm,
                                      double register_wavelength_nm) {
    const auto m = static_cast<Eigen::Index>(grid.n_points());
    return {grid,
            signal_wavelength_nm,
            register_wavelength_nm,
            Eigen::MatrixXcd::Identity(m, m),
            Eigen::MatrixXcd::Zero(m, m),
            Eigen::MatrixXcd::Zero(m, m),
            Eigen::MatrixXcd::Identity(m, m)};
}

GreenFunction assemble(const StageSpec& stage, unsigned threads) {
    const Propagator prop(stage);
    const auto& grid = stage.grid();
    const std::size_t n = grid.n_points();
    const auto m = static_cast<Eigen::Index>(n);

    GreenFunction g{grid,
                    stage.signal_wavelength_nm,
                    register_wavelength(stage),
                    Eigen::MatrixXcd(m, m),
                    Eigen::MatrixXcd(m, m),
                    Eigen::MatrixXcd(m, m),
                    Eigen::MatrixXcd(m, m)};

    parallel_for(2 * n, threads, [&](std::size_t col) {
        std::vector<cplx> s(n), r(n);
        const bool from_signal = col < n;
        const std::size_t k = from_signal ? col : col - n;
        (from_signal ? s : r)[k] = 1.0;
        prop.run(s, r);
        auto& top = from_signal ? g.ss : g.sr;
        auto& bottom = from_signal ? g.rs : g.rr;
        const auto c = static_cast<Eigen::Index>(k);
        for (std::size_t j = 0; j < n; ++j) {
            top(static_cast<Eigen::Index>(j), c) = s[j];
            bottom(static_cast<Eigen::Index>(j), c) = r[j];
        }
    });
    return g;
}

TemporalGrid reduced_grid(const TemporalGrid& grid, std::size_t n_eff) {
    if (n_eff > grid.n_points()) throw InvalidArgument("reduced basis cannot exceed the grid size");
    return TemporalGrid(n_eff, grid.t_start(), grid.span() / static_cast<double>(n_eff));
}

StageSpec restrict_stage(const StageSpec& stage, std::size_t n_eff) {
    const auto target = reduced_grid(stage.grid(), n_eff);
    StageSpec out = stage;
    out.pump = normalized(resample(stage.pump, target));
    return out;
}

GreenFunction assemble_reduced(const StageSpec& stage, std::size_t n_eff, unsigned threads) {
    return assemble(restrict_stage(stage, n_eff), threads);
}

std::pair<Envelope, Envelope> apply(const GreenFunction& g, const Envelope& signal_in,
                                    const Envelope& register_in) {
    if (!(signal_in.grid() == g.grid) || !(register_in.grid() == g.grid)) {
        throw InvalidArgument("apply: envelope grid does not match the Green function grid");
    }
    const auto m = static_cast<Eigen::Index>(g.n());
    const Eigen::Map<const Eigen::VectorXcd> s(signal_in.samples().data(), m);
    const Eigen::Map<const Eigen::VectorXcd> r(register_in.samples().data(), m);
    const Eigen::VectorXcd s_out = g.ss * s + g.sr * r;
    const Eigen::VectorXcd r_out = g.rs * s + g.rr * r;
    return {Envelope(g.grid, Band::signal, g.signal_wavelength_nm,
                     std::vector<cplx>(s_out.data(), s_out.data() + m)),
            Envelope(g.grid, Band::register_, g.register_wavelength_nm,
                     std::vector<cplx>(r_out.data(), r_out.data() + m))};
}

GreenFunction compose(const GreenFunction& second, const GreenFunction& first) {
    if (!(second.grid == first.grid)) throw InvalidArgument("compose: grid mismatch");
    GreenFunction out{first.grid, first.signal_wavelength_nm, first.register_wavelength_nm,
                      {}, {}, {}, {}};
    out.ss.noalias() = second.ss * first.ss + second.sr * first.rs;
    out.sr.noalias() = second.ss * first.sr + second.sr * first.rr;
    out.rs.noalias() = second.rs * first.ss + second.rr * first.rs;
    out.rr.noalias() = second.rs * first.sr + second.rr * first.rr;
    return out;
}

double unitarity_defect(const GreenFunction& g) {
    const Eigen::MatrixXcd s = g.stacked();
    Eigen::MatrixXcd d = s.adjoint() * s;
    d -= Eigen::MatrixXcd::Identity(d.rows(), d.cols());
    return d.cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd first_order_kernel(const StageSpec& stage) {
    stage.validate();
    const auto& grid = stage.grid();
    const std::size_t n = grid.n_points();
    const auto m = static_cast<Eigen::Index>(n);
    const double length = stage.length_mm;
    const double v_s = stage.beta_s - stage.beta_p;
    const double v_r = stage.beta_r - stage.beta_p;
    const auto w = grid.angular_frequencies();
    const Fft fft(n);

    // Spectrum of the pump multiplier; the coupling is circulant in frequency.
    std::vector<cplx> pump(stage.pump.samples());
    for (auto& p : pump) p *= std::polar(1.0, stage.pump_phase);
    fft.forward(pump);

    const cplx i{0.0, 1.0};
    const double inv_n = 1.0 / static_cast<double>(n);
    Eigen::MatrixXcd k_hat(m, m);
    for (std::size_t out = 0; out < n; ++out) {
        const cplx exit_phase = std::polar(1.0, -w[out] * v_r * length);
        for (std::size_t in = 0; in < n; ++in) {
            // integral_0^L exp(i z (w_out v_r - w_in v_s)) dz
            const double x = w[out] * v_r - w[in] * v_s;
            const double half = 0.5 * x * length;
            const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
            const cplx path = length * sinc * std::polar(1.0, half);
            const cplx p = pump[(out + n - in) % n] * inv_n;
            k_hat(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)) =
                i * stage.gamma * p * exit_phase * path;
        }
    }

    // Back to the time basis: K = Phi^dagger K_hat Phi with Phi = F / sqrt(n).
    std::vector<cplx> buf(n);
    for (Eigen::Index r = 0; r < m; ++r) {
        for (Eigen::Index c = 0; c < m; ++c) buf[static_cast<std::size_t>(c)] = k_hat(r, c);
        fft.forward(buf);
        for (Eigen::Index c = 0; c < m; ++c) k_hat(r, c) = buf[static_cast<std::size_t>(c)];
    }
    for (Eigen::Index c = 0; c < m; ++c) {
        for (Eigen::Index r = 0; r < m; ++r) buf[static_cast<std::size_t>(r)] = k_hat(r, c);
        fft.backward(buf);
        for (Eigen::Index r = 0; r < m; ++r) k_hat(r, c) = buf[static_cast<std::size_t>(r)] * inv_n;
    }
    return k_hat;
}

}  // namespace qfc
