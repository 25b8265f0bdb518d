#pragma once

#include <span>
#include <string>
#include <vector>

#include "qfc/grid.hpp"

namespace qfc {

// Pulse-shape families. hg0/hg1/hg2 are the width-modified Hermite-Gaussians
// used for the pump and signal pulses; gaussian and hermite_gauss are the
// textbook families with a single width.
enum class ShapeFamily { hg0, hg1, hg2, gaussian, hermite_gauss };

std::string to_string(ShapeFamily family);
ShapeFamily shape_family_from_string(const std::string& name);

struct ShapeSpec {
    ShapeFamily family = ShapeFamily::hg0;
    int order = 0;            // hermite_gauss only
    double bandwidth = 0.002; // rad/fs; a Gaussian of this width lasts 1/bandwidth fs

    void validate() const;
};

// Width factors of the modified shapes, relative to the bandwidth parameter.
inline constexpr double kHg1Width = 0.8;
inline constexpr double kHg2PolynomialWidth = 0.89;
inline constexpr double kHg2ExponentWidth = 0.8078;

// Detuning axis conjugate to a grid: m*dw for m = -n/2 .. n/2-1, ascending.
std::vector<double> detuning_axis(const TemporalGrid& grid);

// Real spectral amplitude of the shape on the given detuning axis, normalized
// so that sum |S|^2 dw = 1 (the axis must be uniform and symmetric about 0).
std::vector<double> make_shape_spectral(const ShapeSpec& spec, std::span<const double> detuning);

// Unnormalized spectral amplitude at one detuning.
double shape_amplitude(const ShapeSpec& spec, double detuning);

// Time-domain envelope, the Fourier transform of make_shape_spectral, centred
// on t = 0 and normalized on the grid. Throws InvalidArgument naming the edge
// if |e|^2 near either grid edge exceeds 1e-10 of the peak.
Envelope make_shape_temporal(const ShapeSpec& spec, const TemporalGrid& grid, Band band,
                             double carrier_wavelength_nm);

// tau_p of a pulse: sqrt(2) times the RMS width of |e|^2, which is tau for a
// Gaussian amplitude exp(-t^2 / (2 tau^2)).
double pulse_duration(const Envelope& e);

}  // namespace qfc
