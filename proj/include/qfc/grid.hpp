#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qfc {

using cplx = std::complex<double>;

// Uniform time axis shared by every envelope of a simulation.
// Sample k sits at t_start + k*dt; times are in femtoseconds.
class TemporalGrid {
public:
    TemporalGrid(std::size_t n_points, double t_start, double dt);

    // Grid of n_points samples covering [-span/2, span/2).
    static TemporalGrid centered(std::size_t n_points, double span);

    std::size_t n_points() const { return n_points_; }
    double t_start() const { return t_start_; }
    double dt() const { return dt_; }
    double span() const { return dt_ * static_cast<double>(n_points_); }
    double time(std::size_t k) const { return t_start_ + static_cast<double>(k) * dt_; }

    // Angular frequency of each FFT bin, in FFT order, rad/fs. Bins above
    // n/2 are negative; the Nyquist bin is assigned -pi/dt.
    std::vector<double> angular_frequencies() const;

    bool operator==(const TemporalGrid&) const = default;

private:
    std::size_t n_points_;
    double t_start_;
    double dt_;
};

enum class Band { pump, signal, register_ };

std::string to_string(Band band);

// Slowly varying complex envelope of one band, amplitude in fs^(-1/2).
class Envelope {
public:
    Envelope(TemporalGrid grid, Band band, double carrier_wavelength_nm,
             std::vector<cplx> samples);

    static Envelope zeros(const TemporalGrid& grid, Band band, double carrier_wavelength_nm);

    const TemporalGrid& grid() const { return grid_; }
    Band band() const { return band_; }
    double carrier_wavelength_nm() const { return carrier_wavelength_nm_; }
    const std::vector<cplx>& samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }

    // Same grid, band and carrier; new samples.
    Envelope with_samples(std::vector<cplx> samples) const;

private:
    TemporalGrid grid_;
    Band band_;
    double carrier_wavelength_nm_;
    std::vector<cplx> samples_;
};

double squared_norm(const Envelope& e);

// sum conj(a_k) b_k dt. Throws InvalidArgument on grid mismatch.
cplx inner_product(const Envelope& a, const Envelope& b);

Envelope normalized(const Envelope& e);
Envelope scaled(const Envelope& e, cplx factor);

// a + b, sample by sample; grids must match.
Envelope add(const Envelope& a, const Envelope& b);

double max_abs_difference(const Envelope& a, const Envelope& b);

Envelope apply_phase(const Envelope& e, double phi);

// Returns e(t - tau) by band-limited (spectral) interpolation. |tau| must stay
// below a quarter of the grid span.
Envelope apply_delay(const Envelope& e, double tau);

// Same as apply_delay on raw samples; used by matrix-level code.
void delay_samples(std::span<cplx> samples, const TemporalGrid& grid, double tau);

inline constexpr double kDelayGuardFraction = 0.25;

// Interferometric phase of a doublepass mirror displacement: 4*pi*dL/lambda.
double mirror_displacement_to_phase(double displacement_nm, double wavelength_nm);

struct Moments {
    double centroid;
    double rms_width;
};

// Intensity-weighted mean time and RMS width of |e(t)|^2.
Moments centroid_and_width(const Envelope& e);

// Moments of a sampled non-negative profile on an arbitrary axis.
Moments profile_moments(std::span<const double> x, std::span<const double> weight);

// Trigonometric interpolation onto a grid with the same t_start and span but
// a different number of points. Downsampling keeps the |m| < n_target/2 bins.
Envelope resample(const Envelope& e, const TemporalGrid& target);
std::vector<cplx> resample_samples(std::span<const cplx> samples, const TemporalGrid& from,
                                   const TemporalGrid& to);

// Norm fraction held in the outer edge_points() samples at each end.
double edge_fraction(std::span<const cplx> samples);
std::size_t edge_points(std::size_t n_points);

// Largest |x|^2 within the edge regions relative to the peak |x|^2 (0 for the
// zero vector).
double edge_to_peak(std::span<const cplx> samples);

}  // namespace qfc
