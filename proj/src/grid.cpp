#include "qfc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qfc/error.hpp"
#include "qfc/fft.hpp"

namespace qfc {

TemporalGrid::TemporalGrid(std::size_t n_points, double t_start, double dt)
    : n_points_(n_points), t_start_(t_start), dt_(dt) {
    if (n_points < 8) throw InvalidArgument("TemporalGrid needs at least 8 points");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("TemporalGrid dt must be positive");
    if (!std::isfinite(t_start)) throw InvalidArgument("TemporalGrid t_start must be finite");
}

TemporalGrid TemporalGrid::centered(std::size_t n_points, double span) {
    if (!(span > 0.0)) throw InvalidArgument("grid span must be positive");
    return TemporalGrid(n_points, -0.5 * span, span / static_cast<double>(n_points));
}

std::vector<double> TemporalGrid::angular_frequencies() const {
    const auto n = static_cast<long>(n_points_);
    const double dw = 2.0 * std::numbers::pi / span();
    std::vector<double> w(n_points_);
    for (long m = 0; m < n; ++m) {
        const long signed_m = (2 * m < n) ? m : m - n;
        w[static_cast<std::size_t>(m)] = dw * static_cast<double>(signed_m);
    }
    return w;
}

std::string to_string(Band band) {
    switch (band) {
        case Band::pump: return "pump";
        case Band::signal: return "signal";
        case Band::register_: return "register";
    }
    return "?";
}

Envelope::Envelope(TemporalGrid grid, Band band, double carrier_wavelength_nm,
                   std::vector<cplx> samples)
    : grid_(grid), band_(band), carrier_wavelength_nm_(carrier_wavelength_nm),
      samples_(std::move(samples)) {
    if (samples_.size() != grid_.n_points()) {
        throw InvalidArgument("envelope has " + std::to_string(samples_.size()) +
                              " samples for a grid of " + std::to_string(grid_.n_points()));
    }
    if (!(carrier_wavelength_nm > 0.0)) throw InvalidArgument("carrier wavelength must be positive");
}

Envelope Envelope::zeros(const TemporalGrid& grid, Band band, double carrier_wavelength_nm) {
    return Envelope(grid, band, carrier_wavelength_nm, std::vector<cplx>(grid.n_points()));
}

Envelope Envelope::with_samples(std::vector<cplx> samples) const {
    return Envelope(grid_, band_, carrier_wavelength_nm_, std::move(samples));
}

double squared_norm(const Envelope& e) {
    double acc = 0.0;
    for (const auto& x : e.samples()) acc += std::norm(x);
    return acc * e.grid().dt();
}

namespace {

void require_same_grid(const Envelope& a, const Envelope& b, const char* what) {
    if (!(a.grid() == b.grid())) throw InvalidArgument(std::string(what) + ": grid mismatch");
}

}  // namespace

cplx inner_product(const Envelope& a, const Envelope& b) {
    require_same_grid(a, b, "inner_product");
    cplx acc{0.0, 0.0};
    const auto& x = a.samples();
    const auto& y = b.samples();
    for (std::size_t k = 0; k < x.size(); ++k) acc += std::conj(x[k]) * y[k];
    return acc * a.grid().dt();
}

Envelope normalized(const Envelope& e) {
    const double n2 = squared_norm(e);
    if (!(n2 > 0.0)) throw InvalidArgument("cannot normalize a zero envelope");
    return scaled(e, 1.0 / std::sqrt(n2));
}

Envelope scaled(const Envelope& e, cplx factor) {
    std::vector<cplx> out(e.samples());
    for (auto& x : out) x *= factor;
    return e.with_samples(std::move(out));
}

Envelope add(const Envelope& a, const Envelope& b) {
    require_same_grid(a, b, "add");
    std::vector<cplx> out(a.samples());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += b.samples()[k];
    return a.with_samples(std::move(out));
}

double max_abs_difference(const Envelope& a, const Envelope& b) {
    require_same_grid(a, b, "max_abs_difference");
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        m = std::max(m, std::abs(a.samples()[k] - b.samples()[k]));
    }
    return m;
}

Envelope apply_phase(const Envelope& e, double phi) {
    if (phi == 0.0) return e;
    return scaled(e, std::polar(1.0, phi));
}

void delay_samples(std::span<cplx> samples, const TemporalGrid& grid, double tau) {
    if (samples.size() != grid.n_points()) throw InvalidArgument("delay: sample count mismatch");
    if (!(std::abs(tau) < kDelayGuardFraction * grid.span())) {
        std::ostringstream msg;
        msg << "delay of " << tau << " fs exceeds the guard of " << kDelayGuardFraction * grid.span()
            << " fs (a quarter of the grid span)";
        throw InvalidArgument(msg.str());
    }
    if (tau == 0.0) return;
    Fft fft(samples.size());
    fft.forward(samples);
    const auto w = grid.angular_frequencies();
    const double inv_n = 1.0 / static_cast<double>(samples.size());
    for (std::size_t m = 0; m < samples.size(); ++m) {
        samples[m] *= std::polar(inv_n, -w[m] * tau);
    }
    fft.backward(samples);
}

Envelope apply_delay(const Envelope& e, double tau) {
    std::vector<cplx> out(e.samples());
    delay_samples(out, e.grid(), tau);
    return e.with_samples(std::move(out));
}

double mirror_displacement_to_phase(double displacement_nm, double wavelength_nm) {
    if (!(wavelength_nm > 0.0)) throw InvalidArgument("wavelength must be positive");
    return 2.0 * std::numbers::pi * (2.0 * displacement_nm) / wavelength_nm;
}

Moments profile_moments(std::span<const double> x, std::span<const double> weight) {
    if (x.size() != weight.size()) throw InvalidArgument("profile_moments: size mismatch");
    double w0 = 0.0, w1 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        w0 += weight[k];
        w1 += weight[k] * x[k];
    }
    if (!(w0 > 0.0)) throw InvalidArgument("profile has zero weight");
    const double mean = w1 / w0;
    double w2 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double d = x[k] - mean;
        w2 += weight[k] * d * d;
    }
    return {mean, std::sqrt(w2 / w0)};
}

Moments centroid_and_width(const Envelope& e) {
    const auto& g = e.grid();
    std::vector<double> t(g.n_points()), w(g.n_points());
    for (std::size_t k = 0; k < t.size(); ++k) {
        t[k] = g.time(k);
        w[k] = std::norm(e.samples()[k]);
    }
    if (!(squared_norm(e) > 0.0)) throw InvalidArgument("centroid_and_width: zero-norm envelope");
    return profile_moments(t, w);
}

std::vector<cplx> resample_samples(std::span<const cplx> samples, const TemporalGrid& from,
                                   const TemporalGrid& to) {
    if (samples.size() != from.n_points()) throw InvalidArgument("resample: sample count mismatch");
    const double rel = std::abs(from.span() - to.span()) / from.span();
    if (from.t_start() != to.t_start() || rel > 1e-12) {
        throw InvalidArgument("resample: grids must share t_start and span");
    }
    const std::size_t n_in = from.n_points();
    const std::size_t n_out = to.n_points();
    std::vector<cplx> spec(samples.begin(), samples.end());
    Fft(n_in).forward(spec);

    std::vector<cplx> out(n_out);
    // Only bins representable on both grids survive; the Nyquist bin of the
    // smaller grid is dropped so the map stays symmetric.
    const long half = static_cast<long>(std::min(n_in, n_out) / 2);
    const double scale = 1.0 / static_cast<double>(n_in);
    for (long m = -half + 1; m < half; ++m) {
        const auto src = static_cast<std::size_t>(m >= 0 ? m : m + static_cast<long>(n_in));
        const auto dst = static_cast<std::size_t>(m >= 0 ? m : m + static_cast<long>(n_out));
        out[dst] = spec[src] * scale;
    }
    if (n_in == n_out) out[n_out / 2] = spec[n_in / 2] * scale;
    Fft(n_out).backward(out);
    return out;
}

Envelope resample(const Envelope& e, const TemporalGrid& target) {
    if (e.grid() == target) return e;
    return Envelope(target, e.band(), e.carrier_wavelength_nm(),
                    resample_samples(e.samples(), e.grid(), target));
}

std::size_t edge_points(std::size_t n_points) { return std::max<std::size_t>(1, n_points / 32); }

double edge_fraction(std::span<const cplx> samples) {
    const std::size_t n = samples.size();
    const std::size_t m = edge_points(n);
    double edge = 0.0, total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double p = std::norm(samples[k]);
        total += p;
        if (k < m || k >= n - m) edge += p;
    }
    return total > 0.0 ? edge / total : 0.0;
}

double edge_to_peak(std::span<const cplx> samples) {
    const std::size_t n = samples.size();
    const std::size_t m = edge_points(n);
    double edge = 0.0, peak = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double p = std::norm(samples[k]);
        peak = std::max(peak, p);
        if (k < m || k >= n - m) edge = std::max(edge, p);
    }
    return peak > 0.0 ? edge / peak : 0.0;
}

}  // namespace qfc
