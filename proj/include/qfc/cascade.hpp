#pragma once

#include <optional>
#include <string>
#include <span>
#include <vector>

#include "qfc/green.hpp"
#include "qfc/grid.hpp"
#include "qfc/stage.hpp"

namespace qfc {

// Everything that happens to the fields between the two passes: per-band
// phases and delays, amplitude transmissions (loss beamsplitters), and the
// phase and timing of the fresh second pump. Unset delays are chosen
// automatically by resolve_delays().
struct InterstageOps {
    double phase_s = 0.0;
    double phase_r = 0.0;
    double pump2_phase = 0.0;
    std::optional<double> delay_s;
    std::optional<double> delay_r;
    std::optional<double> pump2_delay;
    double transmission_s = 1.0;
    double transmission_r = 1.0;

    void validate() const;
};

// pump2_phase + phase_s - phase_r wrapped to (-pi, pi].
double net_phase(const InterstageOps& ops);

// Wraps an angle to (-pi, pi].
double wrap_phase(double phi);

struct ResolvedDelays {
    double signal;
    double reg;
    double pump2;
};

// Automatic delays. After the first pass the register trails the signal by up
// to the walk-off W = (beta_r - beta_s) L; the second pass replays the first
// only if the register is moved back by the full W relative to the signal, so
// that light generated at depth z meets the pump again at depth z. The shift is
// split symmetrically: the second pump and the signal sit W/2 after the origin,
// the register starts W/2 before it.
ResolvedDelays auto_delays(const StageSpec& stage);

// Fills unset delays from auto_delays() and checks all three against the
// quarter-span guard of the stage grid.
ResolvedDelays resolve_delays(const StageSpec& stage, const InterstageOps& ops);

struct CascadeSpec {
    StageSpec stage1;
    StageSpec stage2;  // pump envelope and gamma may differ; medium must match
    InterstageOps ops;
    bool allow_medium_mismatch = false;

    void validate() const;
};

// Two passes through the same stage.
CascadeSpec make_cascade(const StageSpec& stage, const InterstageOps& ops = {});

// stage2 with its pump moved by the second-pump delay and pump2_phase added.
StageSpec effective_second_stage(const CascadeSpec& spec);

struct CascadeOutput {
    Envelope signal_mid;    // entering the second pass, after delays and losses
    Envelope register_mid;
    Envelope signal_out;
    Envelope register_out;
    // Register output referenced to the pump-off signal throughput,
    // |r_out|^2 / (t_s^2 |s_in|^2). For lossless arms this is the depleted
    // fraction 1 - |s_out|^2 / |s_in|^2. NaN when the signal arm is blocked.
    double ce;
};

CascadeOutput run_cascade(const CascadeSpec& spec, const Envelope& signal_in);

// run_cascade in two halves, so scans over interstage settings can reuse the
// first pass. stage2 is normally effective_second_stage(spec); delays and
// input_norm (|s_in|^2) are passed explicitly.
StageOutput first_pass(const CascadeSpec& spec, const Envelope& signal_in);
CascadeOutput second_pass(const CascadeSpec& spec, const StageSpec& stage2, const StageOutput& first,
                          const ResolvedDelays& delays, double input_norm);

// Diagonal operator between the passes on the given grid.
GreenFunction interstage_green(const CascadeSpec& spec, const TemporalGrid& grid);

// G2 * D * G1. With n_eff > 0 both passes use the reduced basis of that size.
GreenFunction cascade_green(const CascadeSpec& spec, unsigned threads = 1, std::size_t n_eff = 0);

enum class Mirror { s, r, both_same, both_opposite };

std::string to_string(Mirror mirror);
Mirror mirror_from_string(const std::string& name);

inline constexpr double kSpeedOfLightNmPerFs = 299.792458;

struct FringePoint {
    double displacement_nm;
    double net_phase;
    double ce;
};

struct FringeScanOptions {
    // For the combined scans the listed displacement moves the r mirror and
    // the s mirror moves this many times as far.
    double s_to_r_step_ratio = 1.0;
    unsigned threads = 1;
};

// A mirror displacement dL (positive towards the medium, shortening the arm)
// adds 4 pi dL / lambda to the band phase at that band's carrier and advances
// the band by 2 dL / c.
std::vector<FringePoint> fringe_scan(const CascadeSpec& spec, Mirror mirror,
                                     std::span<const double> displacements_nm, const Envelope& signal_in,
                                     const FringeScanOptions& options = {});

// (max - min) / (max + min).
double fringe_visibility(std::span<const double> ce);

}  // namespace qfc
