#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qfc/grid.hpp"
#include "qfc/mode_shapes.hpp"
#include "qfc/stage.hpp"

namespace qfc::test {

inline constexpr double kTauP = 500.0;

// Stage with the standard medium (L = 5 mm, 40 fs pump-signal walk-off) and
// the given signal-register walk-off zeta * tau_p.
inline StageSpec walkoff_stage(std::size_t n, double span, double zeta, double effective,
                               ShapeFamily pump_shape = ShapeFamily::hg0) {
    const auto grid = TemporalGrid::centered(n, span);
    const double beta_s = 7330.0 + 40.0 / 5.0;
    StageSpec s{5.0, 7330.0, beta_s, beta_s + zeta * kTauP / 5.0, 0.0,
                make_shape_temporal(ShapeSpec{pump_shape, 0, 1.0 / kTauP}, grid, Band::pump, kPumpWavelengthNm)};
    s.gamma = gamma_for_effective_strength(s, effective);
    return s;
}

inline Envelope shape(const StageSpec& stage, ShapeFamily family) {
    return make_shape_temporal(ShapeSpec{family, 0, 1.0 / kTauP}, stage.grid(), Band::signal,
                               stage.signal_wavelength_nm);
}

inline Envelope zero_register(const StageSpec& stage) {
    return Envelope::zeros(stage.grid(), Band::register_, register_wavelength(stage));
}

// Super-Gaussian pump, flat to 1e-6 over |t| < half_width / 2.
inline Envelope flat_top_pump(const TemporalGrid& grid, double half_width) {
    std::vector<cplx> p(grid.n_points());
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::exp(-std::pow(grid.time(k) / half_width, 20));
    return normalized(Envelope(grid, Band::pump, kPumpWavelengthNm, std::move(p)));
}

// Group-matched stage (all slownesses equal): every time slot is its own
// two-level system.
inline StageSpec matched_stage(std::size_t n, double span, double half_width) {
    return StageSpec{5.0, 7330.0, 7330.0, 7330.0, 0.0, flat_top_pump(TemporalGrid::centered(n, span), half_width)};
}


// Random smooth localized signal: a few delayed, phased Gaussians.
inline Envelope random_signal(const StageSpec& stage, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> x(stage.grid().n_points());
    for (int j = 0; j < 3; ++j) {
        const double t0 = 1500.0 * u(rng);
        const double w = 400.0 + 150.0 * u(rng);
        const cplx c{u(rng), u(rng)};
        for (std::size_t k = 0; k < x.size(); ++k) {
            const double t = stage.grid().time(k) - t0;
            x[k] += c * std::exp(-t * t / (2.0 * w * w));
        }
    }
    return normalized(Envelope(stage.grid(), Band::signal, stage.signal_wavelength_nm, std::move(x)));
}

inline double max_abs(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

}  // namespace qfc::test
