#pragma once

#include <span>
#include <vector>

#include "qfc/fft.hpp"
#include "qfc/grid.hpp"

namespace qfc {

// One pumped chi(2) conversion stage.
//
// The signal and register envelopes obey, in the lab frame,
//   (d/dz + beta_s d/dt) A_s = i gamma conj(A_p(t - beta_p z)) A_r
//   (d/dz + beta_r d/dt) A_r = i gamma      A_p(t - beta_p z)  A_s
// with the pump phase folded into A_p. Grid times are measured in the pump's
// comoving frame, so the pump envelope is static.
struct StageSpec {
    double length_mm = 5.0;
    double beta_p = 0.0;  // group slownesses, fs/mm
    double beta_s = 0.0;
    double beta_r = 0.0;
    double gamma = 0.0;   // fs^(1/2)/mm
    Envelope pump;        // normalized, band = pump
    int n_z_steps = 512;
    double pump_phase = 0.0;
    double signal_wavelength_nm = 812.2;

    const TemporalGrid& grid() const { return pump.grid(); }
    void validate() const;
};

inline constexpr double kPumpWavelengthNm = 821.0;
inline constexpr double kSignalWavelengthNm = 812.2;

// Energy conservation, omega_r = omega_p + omega_s.
double register_wavelength(double pump_wavelength_nm, double signal_wavelength_nm);
double register_wavelength(const StageSpec& stage);

// Signed signal-register walk-off over the medium, (beta_r - beta_s) L, in fs.
double walk_off(const StageSpec& stage);

// gamma * sqrt(L / |beta_r - beta_s|). Throws if the slownesses coincide.
double effective_strength(const StageSpec& stage);
double gamma_for_effective_strength(const StageSpec& stage, double effective);

// |beta_r - beta_s| L / tau_p with tau_p from the pump's RMS duration.
double zeta(const StageSpec& stage);

struct StageOutput {
    Envelope signal_out;
    Envelope register_out;
    double boundary_leakage;
};

inline constexpr double kInputTailLimit = 1e-10;
inline constexpr double kLeakageLimit = 1e-6;

// Split-step integrator for one stage with precomputed step tables.
//
// Each z step applies half a spectral advection, the exact pointwise two-level
// rotation, and another half advection (Strang splitting, O(dz^2)). run() works
// in place on raw sample vectors without any guards; it is const and safe to
// call concurrently.
class Propagator {
public:
    explicit Propagator(const StageSpec& stage);

    const TemporalGrid& grid() const { return grid_; }
    void run(std::span<cplx> signal, std::span<cplx> reg) const;

private:
    void advect(std::span<cplx> field, const std::vector<cplx>& phase) const;

    TemporalGrid grid_;
    Fft fft_;
    int n_steps_;
    bool move_signal_;
    bool move_register_;
    std::vector<cplx> signal_half_, signal_full_;
    std::vector<cplx> register_half_, register_full_;
    std::vector<double> cos_theta_;
    std::vector<cplx> to_signal_;    // i e^{-i phi} sin(theta)
    std::vector<cplx> to_register_;  // i e^{+i phi} sin(theta)
};

// Propagates both bands through the stage. Checks that inputs share the pump
// grid and have negligible tails, and that nothing leaked to the grid edges.
StageOutput propagate(const StageSpec& stage, const Envelope& signal_in, const Envelope& register_in);

// Fraction of a normalized signal converted into the register band.
double conversion_efficiency(const StageSpec& stage, const Envelope& signal_in);

// Returns gamma such that conversion_efficiency hits target_ce, searching
// below the first CE maximum. Throws NumericalError if that is impossible.
double calibrate_gamma(const StageSpec& stage_template, const Envelope& signal_in, double target_ce,
                       double ce_tolerance = 1e-10);

}  // namespace qfc
