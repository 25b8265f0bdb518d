#include "qfc/mode_shapes.hpp"

#include <cmath>
#include <numbers>

#include "qfc/error.hpp"
#include "qfc/fft.hpp"

namespace qfc {

std::string to_string(ShapeFamily family) {
    switch (family) {
        case ShapeFamily::hg0: return "HG0";
        case ShapeFamily::hg1: return "HG1";
        case ShapeFamily::hg2: return "HG2";
        case ShapeFamily::gaussian: return "gaussian";
        case ShapeFamily::hermite_gauss: return "hermite_gauss";
    }
    return "?";
}

ShapeFamily shape_family_from_string(const std::string& name) {
    if (name == "HG0" || name == "hg0" || name == "p0" || name == "s0") return ShapeFamily::hg0;
    if (name == "HG1" || name == "hg1" || name == "p1" || name == "s1") return ShapeFamily::hg1;
    if (name == "HG2" || name == "hg2" || name == "p2" || name == "s2") return ShapeFamily::hg2;
    if (name == "gaussian") return ShapeFamily::gaussian;
    if (name == "hermite_gauss") return ShapeFamily::hermite_gauss;
    throw InvalidArgument("unknown shape family '" + name + "'");
}

void ShapeSpec::validate() const {
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
        throw InvalidArgument("shape bandwidth must be positive");
    }
    if (order < 0) throw InvalidArgument("Hermite-Gauss order must be non-negative");
}

namespace {

// Physicists' Hermite polynomial by upward recurrence.
double hermite(int n, double x) {
    double h0 = 1.0;
    if (n == 0) return h0;
    double h1 = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        const double h2 = 2.0 * x * h1 - 2.0 * k * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

double gaussian(double x, double width) { return std::exp(-(x * x) / (2.0 * width * width)); }

}  // namespace

double shape_amplitude(const ShapeSpec& spec, double w) {
    const double bw = spec.bandwidth;
    switch (spec.family) {
        case ShapeFamily::hg0:
        case ShapeFamily::gaussian:
            return gaussian(w, bw);
        case ShapeFamily::hg1: {
            const double a = kHg1Width * bw;
            return (w / a) * gaussian(w, a);
        }
        case ShapeFamily::hg2: {
            const double x = w / (kHg2PolynomialWidth * bw);
            return (2.0 * x * x - 1.0) * gaussian(w, kHg2ExponentWidth * bw);
        }
        case ShapeFamily::hermite_gauss:
            return hermite(spec.order, w / bw) * gaussian(w, bw);
    }
    return 0.0;
}

std::vector<double> detuning_axis(const TemporalGrid& grid) {
    const auto n = static_cast<long>(grid.n_points());
    const double dw = 2.0 * std::numbers::pi / grid.span();
    std::vector<double> axis(grid.n_points());
    for (long m = 0; m < n; ++m) axis[static_cast<std::size_t>(m)] = dw * static_cast<double>(m - n / 2);
    return axis;
}

std::vector<double> make_shape_spectral(const ShapeSpec& spec, std::span<const double> detuning) {
    spec.validate();
    if (detuning.size() < 2) throw InvalidArgument("detuning axis needs at least two points");
    const double dw = detuning[1] - detuning[0];
    std::vector<double> s(detuning.size());
    double norm = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        s[k] = shape_amplitude(spec, detuning[k]);
        norm += s[k] * s[k];
    }
    norm *= dw;
    if (!(norm > 0.0)) throw InvalidArgument("shape has zero norm on this axis");
    const double inv = 1.0 / std::sqrt(norm);
    for (auto& x : s) x *= inv;
    return s;
}

Envelope make_shape_temporal(const ShapeSpec& spec, const TemporalGrid& grid, Band band,
                             double carrier_wavelength_nm) {
    spec.validate();
    const std::size_t n = grid.n_points();
    const auto w = grid.angular_frequencies();

    // e(t_k) = sum_m S(w_m) exp(-i w_m t_k); with t_k = t_start + k dt this is a
    // forward DFT of S(w_m) exp(-i w_m t_start).
    std::vector<cplx> buf(n);
    for (std::size_t m = 0; m < n; ++m) {
        buf[m] = shape_amplitude(spec, w[m]) * std::polar(1.0, -w[m] * grid.t_start());
    }
    Fft(n).forward(buf);

    Envelope e(grid, band, carrier_wavelength_nm, std::move(buf));
    if (!(squared_norm(e) > 0.0)) throw InvalidArgument("shape is not resolved on this grid");
    e = normalized(e);

    const std::size_t edge = edge_points(n);
    double peak = 0.0, lead = 0.0, trail = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double p = std::norm(e.samples()[k]);
        peak = std::max(peak, p);
        if (k < edge) lead = std::max(lead, p);
        if (k >= n - edge) trail = std::max(trail, p);
    }
    if (lead > 1e-10 * peak) {
        throw InvalidArgument(to_string(spec.family) + " pulse leaks into the leading grid edge (t = " +
                              std::to_string(grid.t_start()) + " fs); widen the grid");
    }
    if (trail > 1e-10 * peak) {
        throw InvalidArgument(to_string(spec.family) + " pulse leaks into the trailing grid edge (t = " +
                              std::to_string(grid.time(n - 1)) + " fs); widen the grid");
    }
    return e;
}

double pulse_duration(const Envelope& e) {
    return std::numbers::sqrt2 * centroid_and_width(e).rms_width;
}

}  // namespace qfc
